// Swaps the lexical guards cannot judge; the compiler decides.
#include <iostream>
#include <vector>

int Count() { return 3; }

int main() {
  std::vector<int> w = {1, 2};
  // expect: INI paren-to-brace generated build=fail
  std::vector<int> v(w.size());
  // expect: INI paren-to-brace generated probe=diff
  std::vector<int> r(Count());
  std::cout << v.size() << ' ' << r.size() << '\n';
}
