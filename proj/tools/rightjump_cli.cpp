// Command-line front end: every subcommand is a thin wrapper over the
// library; exit codes are 0 (ok), 1 (domain error), 2 (usage error).
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rightjump/rightjump.hpp"

namespace rj = rightjump;
using nlohmann::json;

namespace {

// Fixed 12-significant-digit formatting keeps all float output deterministic.
std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double num12(double x) { return std::stod(fmt12(x)); }

std::string to_dec(const rj::Int& v) { return v.get_str(); }

rj::PRecurrence recurrence_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rj::Error("cannot open recurrence file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw rj::Error("recurrence file is not valid JSON: " + std::string(e.what()));
  }
  rj::PRecurrence rec;
  try {
    rec.order = j.at("order").get<int>();
    for (const auto& poly : j.at("polys"))
      rec.coeff_polys.emplace_back(poly.get<std::vector<long long>>());
    for (const auto& v : j.at("init")) {
      if (v.is_string())
        rec.initial_values.emplace_back(v.get<std::string>());
      else
        rec.initial_values.emplace_back(v.get<long>());
    }
    rec.offset = j.at("offset").get<long long>();
  } catch (const json::exception& e) {
    throw rj::Error("recurrence file missing or malformed field: " + std::string(e.what()));
  }
  rec.validate();
  return rec;
}

// Triangle source shared by `count b` and `triangle show`: an explicit cache
// file must already cover the requested size.
rj::Triangle triangle_for(int max_n, const std::string& cache_path) {
  if (cache_path.empty()) return rj::build_triangle(max_n);
  rj::Triangle t = rj::load_triangle(cache_path);
  if (t.max_n() < max_n)
    throw rj::Error("cache " + cache_path + " holds rows up to n=" + std::to_string(t.max_n()) +
                    ", need n=" + std::to_string(max_n));
  return t;
}

void emit_distribution_csv(std::ostream& os, const rj::DistributionStats& st) {
  os << "k,probability\n";
  for (const auto& [k, w] : st.histogram) os << k << "," << fmt12(w) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"right-jump permutation combinatorics"};
  app.require_subcommand(1);
  bool progress = false;
  app.add_flag("--progress", progress, "report long-running phases on stderr");

  std::function<int()> action;

  // ---- distance / sort-distance / jumps ------------------------------------
  {
    auto* cmd = app.add_subcommand("distance", "minimal number of right-jumps from SIGMA to PI");
    auto sigma = std::make_shared<std::string>();
    auto pi = std::make_shared<std::string>();
    cmd->add_option("sigma", *sigma, "start permutation")->required();
    cmd->add_option("pi", *pi, "target permutation")->required();
    cmd->callback([&action, sigma, pi] {
      action = [sigma, pi] {
        std::cout << rj::jump_distance(rj::parse_permutation(*sigma), rj::parse_permutation(*pi))
                  << "\n";
        return 0;
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("sort-distance", "right-jumps needed to sort SIGMA");
    auto sigma = std::make_shared<std::string>();
    cmd->add_option("sigma", *sigma, "permutation to sort")->required();
    cmd->callback([&action, sigma] {
      action = [sigma] {
        std::cout << rj::sort_distance(rj::parse_permutation(*sigma)) << "\n";
        return 0;
      };
    });
  }
  {
    auto* cmd = app.add_subcommand("jumps", "a minimal jump sequence from the identity to SIGMA");
    auto sigma = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("text");
    cmd->add_option("sigma", *sigma, "target permutation")->required();
    cmd->add_option("--format", *format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->callback([&action, sigma, format] {
      action = [sigma, format] {
        const rj::Permutation target = rj::parse_permutation(*sigma);
        const auto jumps = rj::witness_jumps(target);
        if (*format == "json") {
          json arr = json::array();
          for (const auto& jmp : jumps) arr.push_back({{"from", jmp.from_pos}, {"to", jmp.to_pos}});
          std::cout << json{{"sigma", rj::format_permutation(target)}, {"jumps", arr}}.dump()
                    << "\n";
        } else {
          for (const auto& jmp : jumps) std::cout << jmp.from_pos << " " << jmp.to_pos << "\n";
        }
        return 0;
      };
    });
  }

  // ---- basis ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("basis", "basis permutations (minimal forbidden patterns)");
    cmd->require_subcommand(1);
    {
      auto* list = cmd->add_subcommand("list", "enumerate a basis set");
      auto p = std::make_shared<int>(-1);
      auto n = std::make_shared<int>(-1);
      auto format = std::make_shared<std::string>("text");
      auto* selector = list->add_option_group("selector", "what to enumerate");
      auto* popt = selector->add_option("--p", *p, "list all of B_p (p <= 4)");
      selector->add_option("--n", *n, "list basis permutations of length n (n <= 11)");
      selector->require_option(1);
      list->add_option("--format", *format, "text | json")
          ->check(CLI::IsMember({"text", "json"}));
      list->callback([&action, p, n, format, popt] {
        const bool have_p = popt->count() > 0;
        action = [p, n, format, have_p] {
          if (have_p) {
            const auto elems = rj::enumerate_basis_for_p(*p);
            if (*format == "json") {
              json arr = json::array();
              for (const auto& e : elems) arr.push_back(rj::format_permutation(e));
              std::cout << json{{"p", *p}, {"elements", arr}}.dump() << "\n";
            } else {
              for (const auto& e : elems) std::cout << rj::format_permutation(e) << "\n";
            }
          } else {
            const auto groups = rj::enumerate_basis(*n);
            if (*format == "json") {
              json obj = json::object();
              for (const auto& [gp, elems] : groups) {
                json arr = json::array();
                for (const auto& e : elems) arr.push_back(rj::format_permutation(e));
                obj[std::to_string(gp)] = arr;
              }
              std::cout << json{{"n", *n}, {"groups", obj}}.dump() << "\n";
            } else {
              for (const auto& [gp, elems] : groups)
                for (const auto& e : elems) std::cout << rj::format_permutation(e) << "\n";
            }
          }
          return 0;
        };
      });
    }
    {
      auto* check = cmd->add_subcommand("check", "test one permutation for basis membership");
      auto sigma = std::make_shared<std::string>();
      auto format = std::make_shared<std::string>("text");
      check->add_option("sigma", *sigma, "permutation to test")->required();
      check->add_option("--format", *format, "text | json")
          ->check(CLI::IsMember({"text", "json"}));
      check->callback([&action, sigma, format] {
        action = [sigma, format] {
          const rj::BasisMembership m = rj::check_basis(rj::parse_permutation(*sigma));
          if (*format == "json") {
            json j{{"is_member", m.is_member}};
            if (m.p) j["p"] = *m.p;
            if (m.failed_condition) j["failed_condition"] = rj::to_string(*m.failed_condition);
            std::cout << j.dump() << "\n";
          } else if (m.is_member) {
            std::cout << "member p=" << *m.p << "\n";
          } else {
            std::cout << "non-member failed=" << rj::to_string(*m.failed_condition) << "\n";
          }
          return 0;
        };
      });
    }
  }

  // ---- count ----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("count", "exact counts");
    cmd->require_subcommand(1);
    {
      auto* d = cmd->add_subcommand("d", "permutations of length n at jump distance p");
      auto n = std::make_shared<int>(0);
      auto p = std::make_shared<int>(0);
      d->add_option("--n", *n, "length")->required();
      d->add_option("--p", *p, "distance")->required();
      d->callback([&action, n, p] {
        action = [n, p] {
          std::cout << to_dec(rj::stirling_d(*n, *p)) << "\n";
          return 0;
        };
      });
    }
    {
      auto* b = cmd->add_subcommand("b", "basis permutations of length n (optionally at index p)");
      auto n = std::make_shared<int>(0);
      auto p = std::make_shared<int>(0);
      auto cache = std::make_shared<std::string>();
      b->add_option("--n", *n, "length")->required();
      auto* popt = b->add_option("--p", *p, "basis index");
      b->add_option("--cache", *cache, "triangle cache file");
      b->callback([&action, n, p, cache, popt] {
        const bool have_p = popt->count() > 0;
        action = [n, p, cache, have_p] {
          if (!have_p) {
            if (*n < 0) throw rj::Error("count b: need n >= 0");
            std::cout << to_dec(rj::b_total(*n)) << "\n";
          } else {
            std::cout << to_dec(triangle_for(*n, *cache).at(*n, *p)) << "\n";
          }
          return 0;
        };
      });
    }
  }

  // ---- triangle -------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("triangle", "exact counting triangle");
    cmd->require_subcommand(1);
    {
      auto* build = cmd->add_subcommand("build", "compute rows up to --max-n and write a cache");
      auto max_n = std::make_shared<int>(0);
      auto out = std::make_shared<std::string>();
      auto method = std::make_shared<std::string>("checked");
      build->add_option("--max-n", *max_n, "largest row")->required();
      build->add_option("--out", *out, "output file")->required();
      build->add_option("--method", *method,
                        "conv | ode | checked (both routes, compared bit-exact)")
          ->check(CLI::IsMember({"conv", "ode", "checked"}));
      build->callback([&action, max_n, out, method, &progress] {
        action = [max_n, out, method, &progress] {
          if (progress) std::cerr << "building triangle to n=" << *max_n << "...\n";
          rj::Triangle t = *method == "conv"  ? rj::build_triangle_convolution(*max_n)
                           : *method == "ode" ? rj::build_triangle_ode(*max_n)
                                              : rj::build_triangle(*max_n);
          rj::save_triangle(t, *out);
          if (progress) std::cerr << "wrote " << *out << "\n";
          return 0;
        };
      });
    }
    {
      auto* show = cmd->add_subcommand("show", "print one row of the triangle");
      auto n = std::make_shared<int>(0);
      auto cache = std::make_shared<std::string>();
      auto format = std::make_shared<std::string>("text");
      show->add_option("--n", *n, "row to print")->required();
      show->add_option("--cache", *cache, "triangle cache file");
      show->add_option("--format", *format, "text | json")
          ->check(CLI::IsMember({"text", "json"}));
      show->callback([&action, n, cache, format] {
        action = [n, cache, format] {
          const rj::Triangle t = triangle_for(*n, *cache);
          if (*format == "json") {
            json row = json::object();
            for (int p = t.band_lo(*n); p <= t.band_hi(*n); ++p)
              row[std::to_string(p)] = to_dec(t.at(*n, p));
            std::cout << json{{"n", *n}, {"row", row}, {"row_sum", to_dec(t.row_sum(*n))}}.dump()
                      << "\n";
          } else {
            for (int p = t.band_lo(*n); p <= t.band_hi(*n); ++p)
              std::cout << *n << "\t" << p << "\t" << to_dec(t.at(*n, p)) << "\n";
          }
          return 0;
        };
      });
    }
  }

  // ---- congruence -----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("congruence", "eventual periodicity of the sequence mod m");
    auto m = std::make_shared<uint32_t>(0);
    auto max_steps = std::make_shared<uint64_t>(rj::DetectOptions{}.max_steps);
    auto emit_cycle = std::make_shared<bool>(false);
    auto rec_path = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("json");
    cmd->add_option("--m", *m, "modulus")->required();
    cmd->add_option("--max-steps", *max_steps, "step budget for cycle detection");
    cmd->add_flag("--emit-cycle", *emit_cycle,
                  "include the residue cycle (periods up to 10^6 only)");
    cmd->add_option("--rec", *rec_path,
                    "JSON recurrence {order, polys, init, offset}; default: the basis-count "
                    "sequence");
    cmd->add_option("--format", *format, "json | text")->check(CLI::IsMember({"json", "text"}));
    cmd->callback([&action, m, max_steps, emit_cycle, rec_path, format, &progress] {
      action = [m, max_steps, emit_cycle, rec_path, format, &progress] {
        const rj::PRecurrence rec =
            rec_path->empty() ? rj::b_recurrence() : recurrence_from_json_file(*rec_path);
        rj::DetectOptions opts;
        opts.max_steps = *max_steps;
        if (progress) std::cerr << "detecting period mod " << *m << "...\n";
        const rj::CongruenceReport rep = rj::detect_period(rec, *m, opts);
        if (*emit_cycle && rep.cycle.empty())
          std::cerr << "note: period " << rep.period
                    << " exceeds the cycle materialization cap; cycle omitted\n";
        if (*format == "text") {
          std::cout << "m " << rep.m << "\npreperiod " << rep.preperiod << "\nperiod "
                    << rep.period << "\nverified " << (rep.verified ? "true" : "false") << "\n";
          if (*emit_cycle && !rep.cycle.empty()) {
            std::cout << "cycle";
            for (uint32_t v : rep.cycle) std::cout << " " << v;
            std::cout << "\n";
          }
        } else {
          json j{{"m", rep.m},
                 {"preperiod", rep.preperiod},
                 {"period", rep.period},
                 {"verified", rep.verified}};
          if (*emit_cycle && !rep.cycle.empty()) j["cycle"] = rep.cycle;
          std::cout << j.dump() << "\n";
        }
        return 0;
      };
    });
  }

  // ---- asymptotics ----------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("asymptotics", "golden-ratio constant and convergence ratio");
    auto n = std::make_shared<long long>(0);
    auto format = std::make_shared<std::string>("json");
    cmd->add_option("--n", *n, "evaluation point")->required();
    cmd->add_option("--format", *format, "json | text")->check(CLI::IsMember({"json", "text"}));
    cmd->callback([&action, n, format] {
      action = [n, format] {
        const rj::AsymptoticConstants c = rj::asymptotic_constant();
        const double ratio = rj::ratio_check(*n);
        const double rel_error = std::abs(ratio - c.C) / c.C;
        if (*format == "text") {
          std::cout << "C " << fmt12(c.C) << "\nexponent " << fmt12(c.exponent) << "\nratio "
                    << fmt12(ratio) << "\nrel_error " << fmt12(rel_error) << "\n";
        } else {
          std::cout << json{{"C", num12(c.C)},
                            {"exponent", num12(c.exponent)},
                            {"ratio", num12(ratio)},
                            {"rel_error", num12(rel_error)}}
                           .dump()
                    << "\n";
        }
        return 0;
      };
    });
  }

  // ---- dist -----------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("dist", "left-to-right-maxima distribution over a basis row");
    auto n = std::make_shared<long long>(0);
    auto out = std::make_shared<std::string>();
    auto plot = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>("csv");
    cmd->add_option("--n", *n, "row length (2..5000)")->required();
    cmd->add_option("--out", *out, "write CSV here instead of stdout");
    cmd->add_option("--plot", *plot, "also write space-separated plot data to this file");
    cmd->add_option("--format", *format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    cmd->callback([&action, n, out, plot, format] {
      action = [n, out, plot, format] {
        const rj::DistributionStats st = rj::ltr_distribution(*n);
        if (!plot->empty()) {
          std::ofstream pf(*plot);
          if (!pf) throw rj::Error("cannot open plot file: " + *plot);
          for (const auto& [k, w] : st.histogram) pf << k << " " << fmt12(w) << "\n";
        }
        if (*format == "json") {
          json hist = json::object();
          for (const auto& [k, w] : st.histogram) hist[std::to_string(k)] = num12(w);
          std::cout << json{{"n", st.n},
                            {"mean", num12(st.mean)},
                            {"variance", num12(st.variance)},
                            {"total_mass", num12(st.total_mass)},
                            {"histogram", hist}}
                           .dump()
                    << "\n";
        } else if (!out->empty()) {
          std::ofstream of(*out);
          if (!of) throw rj::Error("cannot open output file: " + *out);
          emit_distribution_csv(of, st);
        } else {
          emit_distribution_csv(std::cout, st);
        }
        return 0;
      };
    });
  }

  // ---- verify ---------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("verify", "run the cross-validation suite");
    auto fast = std::make_shared<bool>(false);
    auto format = std::make_shared<std::string>("text");
    cmd->add_flag("--fast", *fast, "skip the slow jobs (m=3617 congruence, n=4000 distribution)");
    cmd->add_option("--format", *format, "text | json")->check(CLI::IsMember({"text", "json"}));
    cmd->callback([&action, fast, format, &progress] {
      action = [fast, format, &progress] {
        const auto results = rj::run_verification(!*fast, progress ? &std::cerr : nullptr);
        bool all_pass = true;
        if (*format == "json") {
          json arr = json::array();
          for (const auto& r : results) {
            arr.push_back({{"name", r.name},
                           {"pass", r.pass},
                           {"slow", r.slow},
                           {"seconds", num12(r.seconds)},
                           {"detail", r.detail}});
            all_pass = all_pass && r.pass;
          }
          std::cout << json{{"checks", arr}, {"all_pass", all_pass}}.dump() << "\n";
        } else {
          for (const auto& r : results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << fmt12(r.seconds)
                      << "s): " << r.detail << "\n";
            all_pass = all_pass && r.pass;
          }
          std::cout << (all_pass ? "all checks passed" : "CHECKS FAILED") << " ("
                    << results.size() << " run)\n";
        }
        return all_pass ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const rj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
