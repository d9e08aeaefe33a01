// Copyright 2026 The Urysohn Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ury: command-line front end. Exit codes: 0 success, 1 verification or
// property failure, 2 usage or parse error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "urysohn.hpp"

namespace {

using namespace ury;

struct Config {
  std::uint64_t seed = 0;
  std::size_t points = 6;
  long den = 12;
  std::size_t trials = 1;
  std::string d = "1/2";
  std::string d0 = "1";
  std::string c = "1/4";
  std::string k = "1/3";
  std::string out;
  std::string format = "text";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational flag_rational(const std::string& name, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    throw UsageError("--" + name + ": expected a rational p/q, got '" + text + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

// For several certificates, "dir/cert.json" becomes dir/cert.0.json, ...
std::string numbered(const std::string& path, std::size_t i, std::size_t n) {
  if (path.empty() || n == 1) return path;
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "." + std::to_string(i) + p.extension().string())).string();
}

// Writes the certificate when asked and reports whether it self-verifies.
bool emit(const Certificate& cert, const Config& cfg, std::size_t i, std::size_t n) {
  auto rep = verify_certificate(cert);
  if (!cfg.out.empty()) write_text(numbered(cfg.out, i, n), cert.serialize());
  if (!rep.ok) std::cerr << "certificate " << i << ": " << rep.str() << "\n";
  return rep.ok;
}

int cmd_gen(const Config& cfg) {
  if (cfg.points < 2) throw UsageError("--points must be at least 2");
  if (cfg.den < 2) throw UsageError("--den must be at least 2");
  Rng rng = derive_rng(cfg.seed, 0);
  auto s = random_space(cfg.points, cfg.den, rng);
  write_text(cfg.out, serialize_space(s));
  return 0;
}

int cmd_check(const std::string& path) {
  FiniteMetricSpace s;
  try {
    s = parse_space(read_file(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kMetricViolation) throw;
    std::cout << "invalid: " << e.violations().size() << " violation(s)\n";
    for (const auto& v : e.violations()) std::cout << "  " << v.str() << "\n";
    return 1;
  }
  std::cout << "valid: " << s.size() << " points, diameter " << s.diameter().str() << "\n";
  return 0;
}

int cmd_axioms(const Config& cfg, bool inject_fault) {
  SirConfig sc;
  sc.trials = cfg.trials;
  sc.max_points = cfg.points;
  sc.den_bound = cfg.den;
  sc.seed = cfg.seed;
  if (sc.max_points < 4) throw UsageError("--points must be at least 4");
  if (sc.den_bound < 2) throw UsageError("--den must be at least 2");
  if (inject_fault) {
    // every cross distance 1, ignoring the base
    sc.amalgam = [](const FiniteMetricSpace& l, const FiniteMetricSpace& r, std::span<const Label> b) {
      auto labels = l.labels();
      for (const auto& x : r.labels())
        if (std::find(b.begin(), b.end(), x) == b.end()) labels.push_back(x);
      Matrix d(labels.size(), std::vector<Rational>(labels.size(), one()));
      for (std::size_t i = 0; i < labels.size(); ++i) {
        d[i][i] = Rational(0);
        for (std::size_t j = 0; j < labels.size(); ++j) {
          const auto& sl = l.contains(labels[i]) && l.contains(labels[j]) ? l : r;
          if (i != j && sl.contains(labels[i]) && sl.contains(labels[j]))
            d[i][j] = sl.distance(labels[i], labels[j]);
        }
      }
      return validate_space(labels, d);
    };
  }
  auto rep = check_sir_axioms(sc);
  std::cout << rep.str();
  if (rep.first && !cfg.out.empty()) {
    write_text(cfg.out, rep.first->space);
    std::cout << "counterexample written to " << cfg.out << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int cmd_witness(const std::string& kind, const Config& cfg) {
  std::size_t ok = 0;
  const std::size_t n = std::max<std::size_t>(cfg.trials, 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t seed = cfg.seed + i;
    bool good = false;
    if (kind == "move1") {
      auto k = flag_rational("k", cfg.k);
      auto scene = move1_scene(k, seed);
      auto r = move1_conjugators(*scene.g, "a", seed);
      good = emit(r.certificate, cfg, i, n);
      std::cout << "move1 k=" << k.str() << " conjugates=" << r.conjugates << " d(" << r.start << ","
                << r.end << ")=" << scene.universe->distance(r.start, r.end).str() << "\n";
    } else if (kind == "sphere") {
      if (cfg.points < 1) throw UsageError("--points must be positive");
      // alternate between a free g and one that keeps images close
      auto scene = sphere_scene(cfg.points, cfg.den, seed, i % 2 ? StrategyKind::kTight : StrategyKind::kFree);
      auto r = sphere_witness(*scene.g, scene.base, scene.base[0]);
      good = emit(r.certificate, cfg, i, n);
      std::cout << "sphere x=" << r.x << " d(x,gx)=" << scene.universe->distance(r.x, r.gx).str()
                << " d(x,gb)=" << r.gb_gap.str() << "\n";
    } else if (kind == "alltypes" || kind == "2kd") {
      auto d = flag_rational("d", cfg.d);
      Rng rng = derive_rng(seed, 1);
      auto scene = make_scene(random_space(std::max<std::size_t>(cfg.points, 1), cfg.den, rng, "x"), seed);
      auto p = random_type_of_distance(scene.universe->space(), d, cfg.den, rng);
      if (kind == "alltypes") {
        auto r = alltypes_witness(*scene.g, generic_oracle(), flag_rational("d0", cfg.d0), p);
        good = emit(r.certificate, cfg, i, n);
        std::cout << "alltypes " << (r.outcome.almost_maximal() ? "almost-maximal" : "displacement")
                  << " d(y,gy)=" << r.outcome.displacement.str() << " bound=" << r.bound.str() << "\n";
      } else {
        LazyIsometry h(*scene.universe, "h", StrategyKind::kFree, seed ^ 0x9e3779b97f4a7c15ULL);
        for (const auto& x : scene.base) h.apply(x);
        auto r = two_kd_extension_step(*scene.g, generic_oracle(), flag_rational("c", cfg.c), h, p);
        good = emit(r.certificate, cfg, i, n);
        std::cout << "2kd case=" << r.proof_case << " "
                  << (r.outcome.almost_maximal() ? "almost-maximal" : "displacement")
                  << " d(a,[g,h]a)=" << r.outcome.displacement.str() << "\n";
      }
    } else {
      throw UsageError("unknown witness kind '" + kind + "'");
    }
    ok += good;
  }
  std::cout << ok << "/" << n << " certified\n";
  return ok == n ? 0 : 1;
}

int cmd_ladder(bool concrete, const Config& cfg) {
  auto run = ladder_symbolic();
  if (cfg.format == "json") {
    std::cout << run.certificate.serialize();
  } else {
    std::cout << run.table();
  }
  bool good = emit(run.certificate, cfg, 0, 1);
  if (concrete) {
    auto c = ladder_concrete(cfg.seed, cfg.trials);
    std::cout << "concrete " << c.certified << " certified, " << c.failed << " failed\n";
    good = good && c.failed == 0;
  }
  return good ? 0 : 1;
}

int cmd_verify(const std::string& path) {
  auto cert = Certificate::parse(read_file(path));
  auto rep = verify_certificate(cert);
  std::cout << rep.str() << "\n";
  return rep.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite witnesses for the bounded Urysohn space"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--seed", cfg.seed, "random seed")->envname("URY_SEED");
  app.add_option("--points", cfg.points, "points per random space");
  app.add_option("--den", cfg.den, "denominator bound");
  app.add_option("--trials", cfg.trials, "number of trials");
  app.add_option("--out", cfg.out, "output file");
  app.add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.fallthrough();

  auto* gen = app.add_subcommand("gen", "random valid space");

  std::string file;
  auto* check = app.add_subcommand("check", "validate a space file");
  check->add_option("file", file)->required();

  bool inject_fault = false;
  auto* axioms = app.add_subcommand("axioms", "independence axiom battery");
  axioms->add_flag("--inject-fault", inject_fault)->group("");

  std::string kind;
  auto* witness = app.add_subcommand("witness", "run a lemma construction and certify it");
  witness->add_option("kind", kind, "move1 | sphere | alltypes | 2kd")
      ->required()
      ->check(CLI::IsMember({"move1", "sphere", "alltypes", "2kd"}));
  witness->add_option("--k", cfg.k, "displacement d(a,g(a)) for move1");
  witness->add_option("--d", cfg.d, "distance of the type");
  witness->add_option("--d0", cfg.d0, "alltypes threshold");
  witness->add_option("--c", cfg.c, "2kd displacement floor");

  bool symbolic = false, concrete = false;
  auto* ladder = app.add_subcommand("ladder", "replay the doubling ladder");
  auto* sym = ladder->add_flag("--symbolic", symbolic, "exact arithmetic only (default)");
  ladder->add_flag("--concrete", concrete, "also run each stage against a generic g")->excludes(sym);

  auto* verify = app.add_subcommand("verify", "check a certificate file");
  verify->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(cfg);
    if (*check) return cmd_check(file);
    if (*axioms) {
      if (!app.get_option("--trials")->count()) cfg.trials = 1000;
      if (!app.get_option("--points")->count()) cfg.points = 8;
      if (!app.get_option("--den")->count()) cfg.den = 24;
      return cmd_axioms(cfg, inject_fault);
    }
    if (*witness) {
      if (kind == "sphere" && !app.get_option("--points")->count()) cfg.points = 4;
      if (kind != "sphere" && !app.get_option("--points")->count()) cfg.points = 3;
      return cmd_witness(kind, cfg);
    }
    if (*ladder) {
      if (!app.get_option("--trials")->count()) cfg.trials = 10;
      return cmd_ladder(concrete, cfg);
    }
    if (*verify) return cmd_verify(file);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool input = e.kind() == ErrorKind::kParseError || e.kind() == ErrorKind::kMalformedInput ||
                       e.kind() == ErrorKind::kOutOfRange;
    return input ? 2 : 1;
  }
  return 2;
}
