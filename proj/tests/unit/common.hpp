#pragma once

#include <gtest/gtest.h>

#include "hcdeval/error.hpp"
#include "support.hpp"

// Fails unless `stmt` throws hcdeval::Error carrying `code`.
#define EXPECT_ERRC(stmt, errc)                                                       \
  do {                                                                                \
    try {                                                                             \
      stmt;                                                                           \
      ADD_FAILURE() << "expected " << hcdeval::to_string(errc) << ", nothing thrown"; \
    } catch (const hcdeval::Error& e_) {                                              \
      EXPECT_EQ(e_.code(), errc) << e_.what();                                        \
    }                                                                                 \
  } while (0)

using testsupport::data_path;
