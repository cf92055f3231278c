#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "oracle.hpp"
#include "uind/refmachine.hpp"

using namespace uind;

namespace {

ExecutionOutcome run(const char* bits, std::uint64_t budget = 10, const MachineConfig& cfg = {},
                     const MemoryBank* bank = nullptr) {
  return execute(Program::parse(bits), cfg, budget, bank);
}

std::string out(const ExecutionOutcome& o, const MachineConfig& cfg = {}) {
  return format_symbols(o.output, cfg);
}

}  // namespace

TEST_CASE("hand traces") {
  auto h = run("000");
  CHECK(h.status == Status::Halted);
  CHECK(h.output.empty());
  CHECK(h.usage.bits_read == 3);
  CHECK(h.usage.steps == 1);
  CHECK(h.usage.peak_cells == 1);

  auto o = run("001000");
  CHECK(o.status == Status::Halted);
  CHECK(out(o) == "0");
  CHECK(o.usage.bits_read == 6);
  CHECK(o.usage.steps == 2);

  auto i = run("010001000");
  CHECK(i.status == Status::Halted);
  CHECK(out(i) == "1");
  CHECK(i.usage.bits_read == 9);
  CHECK(i.usage.steps == 3);

  auto lazy = run("001", 1);
  CHECK(lazy.status == Status::NeedsMoreBits);
  CHECK(out(lazy) == "0");
}

TEST_CASE("bits past HALT are not read") {
  auto o = run("000111111");
  CHECK(o.status == Status::Halted);
  CHECK(o.usage.bits_read == 3);
}

TEST_CASE("partial opcode needs more bits") {
  CHECK(run("00").status == Status::NeedsMoreBits);
  CHECK(run("").status == Status::NeedsMoreBits);
  // a partial opcode is not counted as read
  CHECK(run("00100").usage.bits_read == 3);
}

TEST_CASE("saturation and wraparound") {
  // DEC at 0, LEFT at 0, OUT, HALT
  auto o = run("011101001000");
  CHECK(o.status == Status::Halted);
  CHECK(out(o) == "0");
  CHECK(o.usage.peak_cells == 1);

  // RIGHT, INC, OUT, HALT: two cells touched
  auto r = run("100010001000");
  CHECK(out(r) == "1");
  CHECK(r.usage.peak_cells == 2);
  CHECK(r.usage.step_cell_sum == 2 + 2 + 2 + 2);

  // 16 INCs on a binary machine wrap the cell back to 0
  std::string p;
  for (int k = 0; k < 16; ++k) p += "010";
  p += "001000";
  auto w = execute(Program::parse(p), {}, 100);
  CHECK(w.status == Status::Halted);
  CHECK(out(w) == "0");
}

TEST_CASE("loops use cached opcodes") {
  // INC, INC, LOOP, OUT, DEC, END, HALT: prints "10" and reads 21 bits once
  auto o = run("010010110001011111000", 100);
  CHECK(o.status == Status::Halted);
  CHECK(out(o) == "01");
  CHECK(o.usage.bits_read == 21);
  CHECK(o.usage.steps == 2 + 1 + 3 + 3 + 1);

  // LOOP on a zero cell skips its body, fetching it on the way
  auto s = run("110001111000", 100);
  CHECK(s.status == Status::Halted);
  CHECK(s.output.empty());
  CHECK(s.usage.bits_read == 12);

  // unmatched END is a no-op
  auto e = run("111001000");
  CHECK(out(e) == "0");
}

TEST_CASE("infinite loop exhausts the budget") {
  // INC, LOOP, OUT, END repeats forever
  auto o = run("010110001111", 50);
  CHECK(o.status == Status::BudgetExhausted);
  CHECK(o.usage.steps == 50);
  CHECK(o.output.size() > 10);
  CHECK(o.usage.bits_read == 12);
}

TEST_CASE("workspace overflow") {
  MachineConfig cfg;
  cfg.workspace_limit = 2;
  CHECK(execute(Program::parse("100100000"), cfg, 10).status == Status::WorkspaceOverflow);
  CHECK(execute(Program::parse("100000"), cfg, 10).status == Status::Halted);
}

TEST_CASE("larger alphabets and the separator") {
  MachineConfig cfg;
  cfg.alphabet_size = 3;
  auto o = execute(Program::parse("010010001000"), cfg, 10);
  CHECK(out(o, cfg) == "2");

  MachineConfig sep;
  sep.separator_enabled = true;
  auto s = execute(Program::parse("010010001010001000"), sep, 10);
  CHECK(s.output == SymbolString{2, 0});
  CHECK(format_symbols(s.output, sep) == "#0");
  CHECK(parse_symbols("0#1", sep) == SymbolString{0, 2, 1});
  CHECK_THROWS(parse_symbols("0#1", MachineConfig{}));
  CHECK_THROWS(parse_symbols("2", MachineConfig{}));
}

TEST_CASE("CALL convention copies a bank entry") {
  MemoryBank bank{{parse_symbols("0110", {}), parse_symbols("1", {})}};
  auto e0 = run("1110000", 10, {}, &bank);
  CHECK(e0.status == Status::Halted);
  CHECK(out(e0) == "0110");
  CHECK(e0.usage.bits_read == 7);

  auto e1 = run("11110000", 10, {}, &bank);
  CHECK(out(e1) == "1");
  CHECK(e1.usage.bits_read == 8);

  // out of range copies nothing
  auto e5 = run("1111111110000", 10, {}, &bank);
  CHECK(e5.status == Status::Halted);
  CHECK(e5.output.empty());

  // without a bank the leading END is an ordinary no-op
  CHECK(run("111000").status == Status::Halted);
}

TEST_CASE("cost vector") {
  ResourceUsage u{6, 2, 1, 2};
  auto c = cost_from_usage(u, 1, {});
  CHECK(c.volume == 7);
  CHECK(c.energy == 2);
  CHECK(c.action == 2);
  CHECK(c.constructive_energy == 9);
  CHECK(c.constructive_action == 9);
  CHECK(c.total_energy == 10);
  CHECK(c.total_action == 10);

  auto d = cost_from_usage({3, 1, 1, 0}, 0, {});
  CHECK(d.volume == 4);
  CHECK(d.energy == 1);

  auto z = cost_from_usage(u, 5, {0, 0});
  CHECK(z.total_energy == z.energy);
  CHECK(z.total_action == z.action);

  CHECK_THROWS(cost_of(run("001"), 1, {}));
  CHECK(cost_of(run("001000"), 1, {}).volume == 7);
}

TEST_CASE("enumerate_halting matches brute force") {
  for (std::size_t max_bits : {3, 6, 9, 12}) {
    for (std::uint64_t budget : {5, 10, 60}) {
      auto tree = enumerate_halting({}, max_bits, budget);
      auto brute = oracle::halting({}, max_bits, budget);
      REQUIRE(tree.size() == brute.size());
      std::set<std::string> a, b;
      for (auto& h : tree) a.insert(h.program.to_string());
      for (auto& h : brute) b.insert(h.program.to_string());
      CHECK(a == b);
    }
  }
  auto three = enumerate_halting({}, 3, 10);
  REQUIRE(three.size() == 1);
  CHECK(three[0].program.to_string() == "000");
  CHECK_THROWS(enumerate_halting({}, 2, 10));
}

TEST_CASE("enumerate_halting with a bank matches brute force") {
  MemoryBank bank{{parse_symbols("01", {})}};
  auto tree = enumerate_halting({}, 11, 30, &bank);
  auto brute = oracle::halting({}, 11, 30, &bank);
  CHECK(tree.size() == brute.size());
}

TEST_CASE("halting set is prefix-free") {
  auto progs = enumerate_halting({}, 15, 100);
  std::set<std::string> all;
  for (auto& h : progs) all.insert(h.program.to_string());
  for (auto& s : all)
    for (std::size_t k = 3; k < s.size(); ++k) CHECK(all.count(s.substr(0, k)) == 0);
}

TEST_CASE("traverse_outputs") {
  auto r = traverse_outputs({}, parse_symbols("0", {}), 6, 10);
  bool found = false;
  for (auto& rec : r)
    if (rec.program.to_string() == "001") found = rec.output_prefix_matches && rec.bits_read == 3;
  CHECK(found);

  double kraft = 0;
  for (auto& rec : r) kraft += std::ldexp(1.0, -static_cast<int>(rec.bits_read));
  CHECK(kraft <= 1.0);

  for (auto& rec : traverse_outputs({}, parse_symbols("1", {}), 3, 10))
    CHECK_FALSE(rec.output_prefix_matches);

  CHECK_THROWS(traverse_outputs({}, {}, 6, 10));
}

TEST_CASE("traverse_outputs matches brute force") {
  for (const char* target : {"0", "1", "01", "110"}) {
    const auto x = parse_symbols(target, {});
    auto tree = traverse_outputs({}, x, 12, 40);
    auto brute = oracle::records({}, x.size(), 12, 40);
    std::set<std::string> a, b;
    for (auto& rec : tree) a.insert(rec.program.to_string());
    for (auto& rec : brute) b.insert(rec.program.to_string());
    CHECK(a == b);
  }
}

TEST_CASE("budget monotonicity") {
  for (auto& h : enumerate_halting({}, 12, 20)) {
    auto later = execute(h.program, {}, 200);
    CHECK(later.status == Status::Halted);
    CHECK(later.output == h.outcome.output);
    CHECK(later.usage == h.outcome.usage);
  }
}

TEST_CASE("program text") {
  CHECK(Program::parse("0101").to_string() == "0101");
  CHECK_THROWS(Program::parse("012"));
}
