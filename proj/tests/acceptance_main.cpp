// Copyright 2024 The sqlab Authors
// SPDX-License-Identifier: Apache-2.0

// Runs every acceptance criterion, one PASS/FAIL line each, then lists the
// failing checks. Exit status 1 when any criterion fails.

#include <iostream>
#include <vector>

#include "sqlab/lab.hpp"

int main() {
  std::vector<sqlab::lab::CriterionResult> failed;
  for (const std::string& id : sqlab::lab::criterion_ids()) {
    sqlab::lab::CriterionResult r = sqlab::lab::run_criterion(id);
    std::cout << sqlab::lab::format_criterion(r, false) << std::endl;
    if (!r.passed()) failed.push_back(std::move(r));
  }
  if (failed.empty()) return 0;
  std::cout << "\nfailing checks:\n";
  for (const auto& r : failed) std::cout << sqlab::lab::format_failures(r) << '\n';
  return 1;
}
