#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toricob/commands.hpp"

namespace {

int finish(const toricob::CmdResult& r, const std::string& out) {
  std::string text = r.report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "cannot write '" << out << "'\n";
      return 1;
    }
    f << text;
  }
  return r.code;
}

std::vector<toricob::Int> parse_characters(const std::string& csv) {
  std::vector<toricob::Int> out;
  std::istringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(toricob::Int(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for birational cobordisms between toric varieties"};
  app.require_subcommand(1);

  std::string fan_path, ideal_path, out, cobordism_out, characters;
  bool balanced = false;

  CLI::App* c_check = app.add_subcommand("check", "validate a fan file and describe its cones");
  c_check->add_option("fan", fan_path, "fan file")->required();
  c_check->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_dual = app.add_subcommand("dual", "dual cones of the maximal cones");
  c_dual->add_option("fan", fan_path, "fan file")->required();
  c_dual->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_boundary =
      app.add_subcommand("boundary", "lower/upper boundaries of a cobordism and their quotients");
  c_boundary->add_option("fan", fan_path, "fan file with an action line")->required();
  c_boundary->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_cobordize =
      app.add_subcommand("cobordize", "build the blowup cobordism of a smooth fan along an ideal family");
  c_cobordize->add_option("fan", fan_path, "fan file of the blowup source")->required();
  c_cobordize->add_option("ideal", ideal_path, "ideal file (one chart block per maximal cone)")->required();
  c_cobordize->add_option("--out", cobordism_out, "write the cobordism fan file here");

  CLI::App* c_chi = app.add_subcommand("chi", "dependent cones, their order and the increasing labelings");
  c_chi->add_option("fan", fan_path, "fan file with an action line")->required();
  c_chi->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_pieces = app.add_subcommand("pieces", "quasi-elementary pieces and their boundary joints");
  c_pieces->add_option("fan", fan_path, "fan file with an action line")->required();
  c_pieces->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_torify = app.add_subcommand("torify", "torific ideals, blowup and toroidal certificates per chart");
  c_torify->add_option("fan", fan_path, "fan file with an action line")->required();
  c_torify->add_flag("--balanced", balanced, "append the balancing character");
  c_torify->add_option("--characters", characters, "extra characters c1,c2,...");
  c_torify->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_factor = app.add_subcommand("factor", "full factorization trace of a cobordism");
  c_factor->add_option("fan", fan_path, "fan file with an action line")->required();
  c_factor->add_flag("--balanced", balanced, "append the balancing character");
  c_factor->add_option("--characters", characters, "extra characters c1,c2,...");
  c_factor->add_option("--out", out, "write the report here instead of stdout");

  CLI::App* c_example =
      app.add_subcommand("worked-example", "run the built-in weighted A^3 example against its pinned values");
  c_example->add_flag("--balanced", balanced, "also check the balancing character");
  c_example->add_option("--out", out, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  std::vector<toricob::Int> extra;
  try {
    extra = parse_characters(characters);
  } catch (const std::exception&) {
    std::cerr << "bad --characters list '" << characters << "'\n";
    return 2;
  }

  toricob::CmdResult r;
  if (c_check->parsed()) {
    r = toricob::cmd_check(fan_path);
  } else if (c_dual->parsed()) {
    r = toricob::cmd_dual(fan_path);
  } else if (c_boundary->parsed()) {
    r = toricob::cmd_boundary(fan_path);
  } else if (c_cobordize->parsed()) {
    std::optional<std::string> target;
    if (!cobordism_out.empty()) target = cobordism_out;
    r = toricob::cmd_cobordize(fan_path, ideal_path, target);
  } else if (c_chi->parsed()) {
    r = toricob::cmd_chi(fan_path);
  } else if (c_pieces->parsed()) {
    r = toricob::cmd_pieces(fan_path);
  } else if (c_torify->parsed()) {
    r = toricob::cmd_torify(fan_path, extra, balanced);
  } else if (c_factor->parsed()) {
    r = toricob::cmd_factor(fan_path, extra, balanced);
  } else if (c_example->parsed()) {
    r = toricob::cmd_worked_example(balanced);
  }
  return finish(r, out);
}
