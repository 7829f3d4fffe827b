#include "cgm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "cgm/error.hpp"
#include "cgm/metalang.hpp"
#include "cgm/registry.hpp"

namespace cgm {

namespace {

enum class Format { Text, Machine };

struct Options {
  Format format = Format::Text;
  std::string instance;
  std::string path;
  std::string from;
  std::string to;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  int states = 2;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidValue, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "text or machine")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"text", Format::Text},
                                                                        {"machine", Format::Machine}}));
}

CliResult report_result(const LawReport& r, Format f) {
  return {r.ok() ? 0 : 1, f == Format::Machine ? r.to_machine() : r.to_text(), ""};
}

CliResult error_result(const Error& e, Format f) {
  CliResult r;
  r.exit_code = exit_code_for(e.code());
  if (f == Format::Machine) {
    r.out = "status=error\nerror=" + std::string(error_name(e.code())) + "\nmessage=" + e.what() + "\n";
  }
  r.err = std::string("error: ") + e.what() + "\n";
  return r;
}

// "key: value" lines become "key=value".
std::string as_keys(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    out += colon == std::string::npos ? line : line.substr(0, colon) + "=" + line.substr(colon + 2);
    out += "\n";
  }
  return out;
}

CliResult cmd_run(const Options& o) {
  auto program = parse_program(read_file(o.path));
  auto r = run_program(program);
  std::string grade = r.type.index.describe();
  if (o.format == Format::Machine) return {0, "status=ok\ngrade=" + grade + "\n" + as_keys(r.rendered) + "\n", ""};
  return {0, "grade: " + grade + "\n" + r.rendered + "\n", ""};
}

CliResult cmd_ahl(const Options& o) {
  auto verdict = check_ahl(parse_ahl(read_file(o.path)));
  int code = verdict.valid ? 0 : 1;
  if (o.format == Format::Text) return {code, verdict.to_text(), ""};
  std::string out = "status=" + std::string(verdict.valid ? "valid" : "invalid") + "\n";
  if (verdict.error) out += "error=" + std::string(error_name(*verdict.error)) + "\nmessage=" + verdict.message + "\n";
  out += "nodes=" + std::to_string(verdict.nodes.size()) + "\n";
  for (std::size_t i = 0; i < verdict.nodes.size(); ++i) {
    const auto& n = verdict.nodes[i];
    auto key = "node." + std::to_string(i) + ".";
    out += key + "rule=" + n.rule + "\n" + key + "line=" + std::to_string(n.line) + "\n";
    if (n.pre.empty()) continue;
    out += key + "pre=" + n.pre + "\n" + key + "post=" + n.post + "\n";
    out += key + "bound=" + rational_to_string(n.beta) + "\n" + key + "failure=" + rational_to_string(n.failure) + "\n";
  }
  return {code, out, ""};
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Category-graded monads: law suites, graded programs and aHL derivations", "cgm"};
  app.require_subcommand(1);
  Options o;

  auto* laws = app.add_subcommand("laws", "run the law suites of an instance");
  laws->add_option("instance", o.instance, "instance name")->required();
  laws->add_option("--samples", o.samples, "samples per law")->check(CLI::PositiveNumber);
  laws->add_option("--seed", o.seed, "random seed");
  add_format(laws, o);

  auto* run = app.add_subcommand("run", "typecheck and evaluate a .gp program");
  run->add_option("file", o.path, "program file")->required();
  add_format(run, o);

  auto* ahl = app.add_subcommand("ahl", "check an aHL derivation (.ahl)");
  ahl->add_option("file", o.path, "derivation file")->required();
  add_format(ahl, o);

  auto* roundtrip = app.add_subcommand("roundtrip", "typed state forward to category-graded form and back");
  roundtrip->add_option("--states", o.states, "number of state sets (1..3)")->required();
  roundtrip->add_option("--samples", o.samples, "payload samples for mult")->check(CLI::PositiveNumber);
  roundtrip->add_option("--seed", o.seed, "random seed");
  add_format(roundtrip, o);

  auto* translate = app.add_subcommand("translate", "apply a translation and check the result");
  translate->add_option("from", o.from, "source structure")->required();
  translate->add_option("to", o.to, "target structure")->required();
  translate->add_option("instance", o.instance, "instance name")->required();
  translate->add_option("--samples", o.samples, "samples per law")->check(CLI::PositiveNumber);
  translate->add_option("--seed", o.seed, "random seed");
  translate->add_option("--states", o.states, "state sets for typed state (1..3)");
  add_format(translate, o);

  auto* list = app.add_subcommand("list", "list instances and translations");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {0, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {2, "", std::string("error: ") + e.what() + "\n" + app.help()};
  }

  try {
    if (*laws) return report_result(instance_laws(o.instance, o.samples, o.seed), o.format);
    if (*run) return cmd_run(o);
    if (*ahl) return cmd_ahl(o);
    if (*roundtrip) return report_result(roundtrip_report(o.states, o.samples, o.seed), o.format);
    if (*translate) {
      return report_result(translate_report(o.from, o.to, o.instance, o.samples, o.seed, o.states), o.format);
    }
    if (*list) {
      std::string out = "instances:\n";
      for (const auto& n : instance_names()) out += "  " + n + "\n";
      out += "translations:\n";
      for (const auto& t : translation_routes()) {
        out += "  " + t.from + " " + t.to + " " + t.instance + "  " + t.description + "\n";
      }
      return {0, out, ""};
    }
  } catch (const Error& e) {
    return error_result(e, o.format);
  }
  return {2, "", "error: no command\n"};
}

}  // namespace cgm
