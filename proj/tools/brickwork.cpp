// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "brickwork/cli.hpp"

int main(int argc, char **argv)
{
  return brickwork::cli::run(argc, argv, std::cout, std::cerr);
}
