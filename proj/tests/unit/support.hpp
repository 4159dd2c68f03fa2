#pragma once

#include <doctest.h>

#include "symdyn/error.hpp"

// Checks that `expr` throws symdyn::Error of the given kind.
#define CHECK_KIND(expr, k)                                  \
  do {                                                       \
    bool thrown_ = false;                                    \
    try {                                                    \
      (void)(expr);                                          \
    } catch (const symdyn::Error& e_) {                      \
      thrown_ = true;                                        \
      CHECK_MESSAGE(e_.kind() == (k), e_.what());            \
    }                                                        \
    CHECK_MESSAGE(thrown_, #expr " did not throw");          \
  } while (0)
