#pragma once
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tmred {

enum class Move { L, S, R };

struct Instr {
  std::string q2, s2;
  Move move = Move::S;
};

struct Machine {
  std::vector<std::string> sigma;
  std::string blank = "_";
  std::string marker = "#";
  std::vector<std::string> states;
  std::string q0;
  std::vector<std::string> halting;
  std::string hx, hy;
  std::map<std::pair<std::string, std::string>, Instr> delta;

  bool is_halting(const std::string& q) const;
  const Instr* find(const std::string& q, const std::string& s) const;
};

struct Config {
  std::string state;
  size_t head = 0;
  std::vector<std::string> tape;

  // state token before the scanned symbol, trailing blanks past the head dropped
  std::vector<std::string> word(const std::string& blank) const;
  bool operator==(const Config&) const = default;
};

enum class RunStatus { Halted, Running, Cycled };

struct RunTrace {
  std::vector<Config> configs;
  RunStatus status = RunStatus::Running;
  std::string halt_state;
  size_t halt_step = 0;
  size_t cycle_first = 0, cycle_second = 0;
  std::string describe() const;
};

std::vector<std::string> validate_machine(const Machine& m);
Config initial_config(const Machine& m, size_t n);
Config step(const Machine& m, const Config& c);
RunTrace run_trace(const Machine& m, size_t n, size_t max_steps, bool detect_cycles = false);

std::string join_word(const std::vector<std::string>& w);
std::string move_name(Move m);
Move parse_move(const std::string& s);

}  // namespace tmred
