// Writes to elements of containers that are never read afterwards.
#include <iostream>
#include <vector>

int Scratch(int n) {
  // expect: INI paren-to-brace generated probe=diff
  std::vector<int> tmp(n, 1);
  int total = 0;
  // expect: FOR ref generated probe=same
  for (auto& x : tmp) {
    x += 1;
    total += x;
  }
  return total;
}

int main() {
  std::vector<int> data = {3, 1, 2};
  int last = 0;
  // expect: FOR ref generated probe=diff
  for (auto& d : data) { d = d * 10; last = d; }
  std::cout << Scratch(4) << ' ' << last << ' ' << data[1] << '\n';
}
