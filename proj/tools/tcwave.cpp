// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include <iostream>

#include "tcw/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return tcw::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
