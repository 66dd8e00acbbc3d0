#include "linterm/cli.hpp"

#include <cstdio>

namespace linterm {

int run_cli(int, char**) {
  std::fprintf(stderr, "linterm: not yet implemented\n");
  return 70;
}

}  // namespace linterm
