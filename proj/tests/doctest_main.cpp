#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "ll/rational.hpp"

int main(int argc, char** argv) {
  ll::apply_precision_config();
  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}
