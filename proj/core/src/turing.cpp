#include "tmred/turing.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tmred {

bool Machine::is_halting(const std::string& q) const {
  return std::find(halting.begin(), halting.end(), q) != halting.end();
}

const Instr* Machine::find(const std::string& q, const std::string& s) const {
  auto it = delta.find({q, s});
  return it == delta.end() ? nullptr : &it->second;
}

std::vector<std::string> Config::word(const std::string& blank) const {
  size_t len = tape.size();
  while (len > head + 1 && tape[len - 1] == blank) --len;
  std::vector<std::string> w;
  for (size_t i = 0; i < std::max(len, head + 1); ++i) {
    if (i == head) w.push_back(state);
    w.push_back(i < tape.size() ? tape[i] : blank);
  }
  return w;
}

std::string join_word(const std::vector<std::string>& w) {
  std::string s;
  for (auto& t : w) s += t;
  return s;
}

std::string move_name(Move m) { return m == Move::L ? "L" : m == Move::S ? "S" : "R"; }

Move parse_move(const std::string& s) {
  if (s == "L") return Move::L;
  if (s == "S") return Move::S;
  if (s == "R") return Move::R;
  throw std::invalid_argument("bad move '" + s + "'");
}

std::string RunTrace::describe() const {
  switch (status) {
    case RunStatus::Halted: return "halted(" + halt_state + "," + std::to_string(halt_step) + ")";
    case RunStatus::Cycled:
      return "cycled(" + std::to_string(cycle_first) + "," + std::to_string(cycle_second) + ")";
    default: return "running";
  }
}

std::vector<std::string> validate_machine(const Machine& m) {
  std::vector<std::string> out;
  std::set<std::string> sig(m.sigma.begin(), m.sigma.end());
  std::set<std::string> st(m.states.begin(), m.states.end());
  if (!sig.count(m.blank)) out.push_back("alphabet lacks the blank '" + m.blank + "'");
  if (!sig.count(m.marker)) out.push_back("alphabet lacks the marker '" + m.marker + "'");
  if (!st.count(m.q0)) out.push_back("q0 '" + m.q0 + "' is not a state");
  for (auto& h : m.halting)
    if (!st.count(h)) out.push_back("halting state '" + h + "' is not a state");
  if (m.hx == m.hy) out.push_back("hx and hy coincide");
  if (!m.is_halting(m.hx)) out.push_back("hx '" + m.hx + "' is not halting");
  if (!m.is_halting(m.hy)) out.push_back("hy '" + m.hy + "' is not halting");
  for (auto& s : m.sigma)
    if (st.count(s)) out.push_back("'" + s + "' is both a state and a symbol");
  for (auto& t : sig)
    if (t == "⊗" || t == "*") out.push_back("symbol '" + t + "' is reserved");
  for (auto& t : st)
    if (t == "⊗" || t == "*") out.push_back("state '" + t + "' is reserved");

  for (auto& [key, ins] : m.delta) {
    auto& [q, s] = key;
    std::string tag = "delta(" + q + "," + s + ")=(" + ins.q2 + "," + ins.s2 + "," + move_name(ins.move) + "): ";
    if (!st.count(q) || !st.count(ins.q2)) out.push_back(tag + "unknown state");
    if (!sig.count(s) || !sig.count(ins.s2)) out.push_back(tag + "unknown symbol");
    if (ins.q2 == m.q0) out.push_back(tag + "successor state is q0");
    if ((s == m.marker) != (ins.s2 == m.marker)) out.push_back(tag + "rewrites the marker discipline");
    if (s == m.marker && ins.move == Move::L) out.push_back(tag + "moves left on #");
    if (m.is_halting(q) && (ins.q2 != q || ins.s2 != s || ins.move != Move::S))
      out.push_back(tag + "halting state does not self-loop");
  }
  for (auto& q : m.states)
    for (auto& s : m.sigma)
      if (!m.find(q, s)) out.push_back("delta(" + q + "," + s + ") missing");
  return out;
}

Config initial_config(const Machine& m, size_t n) {
  if (n > 0 && std::find(m.sigma.begin(), m.sigma.end(), "|") == m.sigma.end())
    throw std::invalid_argument("alphabet lacks '|'");
  Config c;
  c.state = m.q0;
  c.tape.push_back(m.marker);
  for (size_t i = 0; i < n; ++i) c.tape.push_back("|");
  return c;
}

Config step(const Machine& m, const Config& c) {
  const std::string& s = c.head < c.tape.size() ? c.tape[c.head] : m.blank;
  const Instr* ins = m.find(c.state, s);
  if (!ins) throw std::logic_error("no instruction for (" + c.state + "," + s + ")");
  Config d = c;
  if (d.head >= d.tape.size()) d.tape.resize(d.head + 1, m.blank);
  d.tape[d.head] = ins->s2;
  d.state = ins->q2;
  if (ins->move == Move::R) ++d.head;
  if (ins->move == Move::L) {
    if (d.head == 0) throw std::logic_error("left move off the tape");
    --d.head;
  }
  return d;
}

RunTrace run_trace(const Machine& m, size_t n, size_t max_steps, bool detect_cycles) {
  RunTrace t;
  t.configs.push_back(initial_config(m, n));
  std::map<std::vector<std::string>, size_t> seen;
  for (size_t i = 0;; ++i) {
    const Config& c = t.configs.back();
    if (m.is_halting(c.state)) {
      t.status = RunStatus::Halted;
      t.halt_state = c.state;
      t.halt_step = i;
      return t;
    }
    if (detect_cycles) {
      auto [it, fresh] = seen.emplace(c.word(m.blank), i);
      if (!fresh) {
        t.status = RunStatus::Cycled;
        t.cycle_first = it->second;
        t.cycle_second = i;
        return t;
      }
    }
    if (i >= max_steps) return t;
    t.configs.push_back(step(m, c));
  }
}

}  // namespace tmred
