// main.cpp - impkit command-line entry point
//
// Copyright (C) 2026 impkit contributors.
//
// This software is licensed under the terms of the Apache Licence Version 2.0
// which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.

#include <iostream>

#include "impkit/cli.hpp"

int main(int argc, char** argv) {
  return impkit::cli::run(argc, argv, std::cout, std::cerr);
}
