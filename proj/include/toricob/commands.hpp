#pragma once

#include "toricob/cobordism.hpp"
#include "toricob/io.hpp"
#include "toricob/torific.hpp"

// The command layer behind the CLI: each command parses its input files, runs
// the corresponding pipeline and returns a machine-readable JSON report plus
// an exit code. The exit codes are a stable contract:
//   0 ok, 1 invalid input or mismatch, 2 parse error,
//   3 non-collapsible order (cycle), 4 toroidal certificate failure.

namespace toricob {

struct CmdResult {
  int code = 0;
  nlohmann::json report;
};

// Validity, per-cone smoothness/simpliciality and a support summary.
CmdResult cmd_check(const std::string& fan_path);

// Dual cone of every maximal cone, with the involution re-checked.
CmdResult cmd_dual(const std::string& fan_path);

// Lower/upper boundary subfans of a cobordism and their quotient images.
CmdResult cmd_boundary(const std::string& fan_path);

// Build the explicit cobordism between a smooth fan and its blowup along a
// compatible ideal family; writes the cobordism fan file to cobordism_out when
// given. The report carries both quotient boundaries and their comparisons
// against the blowup fan and the source fan.
CmdResult cmd_cobordize(const std::string& fan_path, const std::string& ideal_path,
                        const std::optional<std::string>& cobordism_out);

// Dependent cones, the order between them, and the increasing labelings
// (per-cone chi and per-component); a cycle reports as exit 3.
CmdResult cmd_chi(const std::string& fan_path);

// Quasi-elementary pieces with their quotient boundaries and joint checks.
CmdResult cmd_pieces(const std::string& fan_path);

// Torific run on every maximal smooth chart: characters, ideals, blowup fan,
// removed rays and toroidal certificates. A failed certificate exits 4.
CmdResult cmd_torify(const std::string& fan_path,
                     const std::vector<Int>& extra_characters, bool balanced);

// The full factorization trace: labels, pieces, per-chart torific runs, and
// per piece either an explicit star-subdivision / inverse pair or the refined
// quotient triangle, with a replay check from source to target.
CmdResult cmd_factor(const std::string& fan_path,
                     const std::vector<Int>& extra_characters, bool balanced);

// The built-in A^3 example with weights (2,3,-1): every intermediate object
// is diffed against its pinned expected value; exit 0 iff the diff is empty.
// expected_override replaces pinned fields (test harness hook).
CmdResult cmd_worked_example(bool balanced,
                             const nlohmann::json& expected_override = nullptr);

}  // namespace toricob
