// Command-line front end: dsop <command> --config FILE [overrides]

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dsop/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace dsop::cli;
  CLI::App app{"Discrete Sobolev orthogonal polynomials with mass points outside [-1,1]"};
  app.set_version_flag("--version", std::string(dsop::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::optional<int> nmax, k, prec;
  std::optional<std::string> out, format;
  const std::map<std::string, std::string> help{
      {"check-order", "decide whether the mass configuration is sequentially ordered"},
      {"orth", "monic Sobolev orthogonal polynomials S_0..S_nmax"},
      {"zeros", "certified zero location of S_n near the mass points"},
      {"assoc", "associated polynomials S^[k]_n and Q^[k]_n"},
      {"quadrature", "Christoffel-type quadrature rule at degree nmax"},
      {"markov", "rational approximation errors of the extended Markov function"},
      {"verify", "run the built-in consistency checks"}};
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, help.count(name) ? help.at(name) : "");
    sub->add_option("--config", config_path, "configuration file (JSON)")->required();
    sub->add_option("--nmax", nmax, "largest degree");
    sub->add_option("--k", k, "order of the associated sequence");
    sub->add_option("--prec", prec, "working precision in bits");
    sub->add_option("--out", out, "output file (default: stdout)");
    sub->add_option("--format", format, "json or csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  try {
    Config c = load_config(config_path);
    if (nmax) c.nmax = *nmax;
    if (k) c.k = *k;
    if (prec) {
      if (*prec < 64 || *prec > 65536) throw parse_error("--prec: must lie in [64, 65536]");
      c.precision_bits = static_cast<unsigned>(*prec);
    }
    if (out) c.path = *out;
    if (format) c.format = *format;

    const Report r = run(cmd, c);
    const std::string text = render(r, c.format);
    if (c.path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(c.path, std::ios::binary);
      if (!f) throw parse_error("cannot write '" + c.path + "'");
      f << text;
    }
    if (cmd == "verify") {
      for (const auto& a : r.assertions)
        if (!a.pass) std::cerr << "FAIL: " << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
      return r.all_pass() ? 0 : 1;
    }
    return 0;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    std::cerr << "dsop " << cmd << ": " << e.what() << "\n";
    return code;
  }
}
