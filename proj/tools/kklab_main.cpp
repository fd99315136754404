// kklab command line: verify (run a check suite), power (dump a basis of the
// power object of a complex), subdivide (barycentric subdivision of a complex).
// Exit codes: 0 on success, 1 when a verification check fails, 2 on input
// errors (unreadable or malformed files, out-of-range arguments).

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kklab/ints.hpp"
#include "kklab/power.hpp"
#include "kklab/report.hpp"
#include "kklab/simplicial.hpp"
#include "kklab/suites.hpp"

namespace {

int write_file(const std::string& path, const std::string& body, std::string& err) {
  std::ofstream out(path);
  if (!out) {
    err = "cannot open " + path + " for writing";
    return 2;
  }
  out << body;
  if (!out) {
    err = "failed while writing " + path;
    return 2;
  }
  return 0;
}

int run_verify(const std::string& suite, const kklab::report::RunOptions& opts,
               const std::string& json_path) {
  kklab::report::VerificationReport rep;
  try {
    rep = kklab::suites::run_suite(suite, opts);
  } catch (const kklab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << rep.text();
  if (!json_path.empty()) {
    std::string err;
    if (write_file(json_path, rep.to_json().dump(2) + "\n", err) != 0) {
      std::cerr << "error: " << err << "\n";
      return 2;
    }
  }
  return rep.all_pass() ? 0 : 1;
}

int run_power(const std::string& input, int degree, bool pointed, const std::string& basis_path) {
  try {
    auto K = kklab::report::load_simplicial(input);
    kklab::power::PowerBasis B(K, degree, pointed);
    nlohmann::json j = B.to_json();
    std::string err;
    if (write_file(basis_path, j.dump(2) + "\n", err) != 0) {
      std::cerr << "error: " << err << "\n";
      return 2;
    }
    std::cout << "rank " << B.rank() << " through degree " << degree << " on "
              << K.all_ids().size() << " simplices -> " << basis_path << "\n";
  } catch (const kklab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

int run_subdivide(const std::string& input, int times, const std::string& out_path) {
  try {
    auto K = kklab::report::load_simplicial(input);
    for (int i = 0; i < times; ++i) K = kklab::sset::subdivide(K).K;
    std::string err;
    if (write_file(out_path, K.to_json().dump(2) + "\n", err) != 0) {
      std::cerr << "error: " << err << "\n";
      return 2;
    }
    std::cout << "sd^" << times << ": " << K.all_ids().size() << " nondegenerate simplices -> "
              << out_path << "\n";
  } catch (const kklab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for power objects, cone algebras, and polynomial homotopies"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  kklab::report::RunOptions opts;
  std::string json_path;
  std::vector<std::string> names = kklab::suites::suite_names();
  names.insert(names.begin(), "all");
  verify->add_option("--suite", suite, "suite to run")
      ->check(CLI::IsMember(names))
      ->capture_default_str();
  verify->add_option("--degree", opts.degree, "polynomial degree bound")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  verify->add_option("--window", opts.window, "window size for infinite-matrix checks")
      ->check(CLI::Range(8L, 512L))
      ->capture_default_str();
  verify->add_option("--seed", opts.seed, "seed for randomized identities")
      ->capture_default_str();
  verify->add_option("--subdivisions", opts.subdivisions, "subdivision sweep depth")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  verify->add_option("--json", json_path, "write the report as JSON to this path");

  // power
  auto* power = app.add_subcommand("power", "compute a basis of the power object of a complex");
  std::string pin, pbasis;
  int pdegree = 6;
  bool ppointed = false;
  power->add_option("--input", pin, "complex as JSON")->required();
  power->add_option("--degree", pdegree, "degree bound")
      ->check(CLI::Range(1, 10))
      ->capture_default_str();
  power->add_option("--basis", pbasis, "output path for the basis dump")->required();
  power->add_flag("--pointed", ppointed, "basis of the basepoint-vanishing part");

  // subdivide
  auto* subdiv = app.add_subcommand("subdivide", "barycentric subdivision of a complex");
  std::string sin, sout;
  int stimes = 1;
  subdiv->add_option("--input", sin, "complex as JSON")->required();
  subdiv->add_option("--times", stimes, "number of subdivisions")
      ->check(CLI::Range(0, 6))
      ->capture_default_str();
  subdiv->add_option("--out", sout, "output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // bad arguments are input errors
  }

  if (verify->parsed()) return run_verify(suite, opts, json_path);
  if (power->parsed()) return run_power(pin, pdegree, ppointed, pbasis);
  if (subdiv->parsed()) return run_subdivide(sin, stimes, sout);
  return 2;
}
