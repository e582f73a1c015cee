#define DOCTEST_CONFIG_IMPLEMENT

#include <doctest.h>

#include "support/testutil.hpp"

namespace testutil {
std::string g_argv0;
}

int main(int argc, char** argv) {
  testutil::g_argv0 = argv[0];
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
