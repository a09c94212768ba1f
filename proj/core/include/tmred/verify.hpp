#pragma once
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmred/countermodels.hpp"
#include "tmred/turing.hpp"

namespace tmred {

enum class Result { Pass, Fail, BudgetExceeded };
std::string result_name(Result r);

struct Outcome {
  Result result = Result::Pass;
  std::vector<Assertion> details;
  std::vector<std::string> artifacts;
  // extension -> content, written by the caller
  std::map<std::string, std::string> files;

  void add(const std::string& name, bool holds, const std::string& witness = "");
  // pass unless an assertion failed; budget-exceeded wins over pass, not over fail
  void settle();
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  size_t max_steps = 10'000;
  // rough bound on worlds * elements^vars * formula nodes
  double budget = 5e11;
  // worlds * elements of a model to be built
  double max_cells = 5e7;
  size_t max_r = 32;
};

Outcome verify_reduction(const Machine& m, size_t n, const std::string& pipeline, const VerifyOptions& opt = {});

// all assertion outcomes folded into one
Outcome from_assertions(const std::vector<Assertion>& as);

}  // namespace tmred
