#include <cstdio>

int main() {
  std::puts("loc5arc placeholder");
  return 0;
}
