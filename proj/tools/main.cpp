#include <cstdio>

int main() {
  std::puts("gcgs: placeholder");
  return 0;
}
