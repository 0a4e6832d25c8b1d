// Swaps that would introduce a narrowing conversion.
#include <cstddef>
#include <iostream>
#include <vector>

int main() {
  // expect-suppressed: INI INI_NARROWING
  std::vector<char> a(300, 'a');
  int n = 3;
  // expect-suppressed: INI INI_NARROWING
  std::vector<char> b(n, 'b');
  std::size_t m = 2;
  // expect-suppressed: INI INI_NARROWING
  std::vector<long> c(m);
  unsigned u = 4;
  // expect: INI paren-to-brace generated probe=diff
  std::vector<long> d(u);
  std::cout << a.size() << ' ' << b.size() << ' ' << c.size() << ' '
            << d.size() << '\n';
}
