// Default by-value captures of locals.
#include <iostream>

int Counter() {
  int count = 0;
  // expect: LMB default-value-capture generated probe=diff
  auto next = [=]() mutable { return ++count; };
  next();
  next();
  return count;
}

int Snapshot() {
  int a = 1;
  // expect: LMB default-value-capture generated probe=diff
  auto get = [=] { return a; };
  a = 2;
  return get();
}

int WithInit() {
  int base = 5;
  // expect: LMB default-value-capture generated probe=same
  auto f = [=, step = 2](int k) { return base + step * k; };
  return f(3);
}

int main() {
  std::cout << Counter() << ' ' << Snapshot() << ' ' << WithInit() << '\n';
}
