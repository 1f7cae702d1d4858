#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "deepnodes/asymptotics.hpp"
#include "deepnodes/genfun.hpp"
#include "deepnodes/paths.hpp"
#include "deepnodes/trees.hpp"

namespace deepnodes::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

enum class Format { text, csv, json };

struct Config {
  std::size_t order = 30;
  std::size_t max_table_n = 200;
  Format format = Format::text;
  std::string output;  // empty: stdout
  std::size_t brute_force_bound = 11;
};

/// Bad flag combination or unusable input; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::size_t default_order() {
  if (const char* env = std::getenv("DEEPNODES_ORDER"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("DEEPNODES_ORDER must be a positive integer, got '") + env + "'");
  }
  return Config{}.order;
}

// ---------------------------------------------------------------------------
// series

inline std::string cmd_series(const std::string& gf, std::size_t order, std::optional<std::size_t> h,
                              const std::string& route) {
  auto need_h = [&]() -> std::size_t {
    if (!h) throw UsageError("--h is required for --gf " + gf);
    if (*h < 1) throw UsageError("--h must be >= 1");
    return *h;
  };
  auto height_route = [&]() {
    if (route.empty() || route == "recursive") return Route::recursive;
    if (route == "closed") return Route::closed;
    throw UsageError("route for " + gf + " must be recursive or closed");
  };
  if (gf == "A") {
    if (!route.empty()) throw UsageError("--gf A takes no --route");
    return gf_A(order).to_string();
  }
  if (gf == "Ah") return gf_A_h(need_h(), order, height_route()).to_string();
  if (gf == "ph") {
    const std::size_t hh = need_h();
    const Route r = height_route();
    if (r == Route::closed && hh < 2) throw UsageError("the closed route of ph needs --h >= 2");
    return gf_p_h(hh, order, r).to_string();
  }
  if (gf == "G") {
    if (route.empty() || route == "recursive") return gf_G(order, GRoute::recursive).to_string();
    if (route == "explicit") return gf_G(order, GRoute::explicit_sum).to_string();
    throw UsageError("route for G must be recursive or explicit");
  }
  if (gf == "dG") {
    if (route.empty() || route == "closed_sum") return gf_dG(order, DGRoute::closed_sum).to_string();
    if (route == "derivative") return gf_dG(order, DGRoute::derivative).to_string();
    if (route == "level_recursion") return gf_dG(order, DGRoute::level_recursion).to_string();
    throw UsageError("route for dG must be derivative, closed_sum or level_recursion");
  }
  throw UsageError("unknown generating function '" + gf + "'");
}

// ---------------------------------------------------------------------------
// trees

inline std::string cmd_trees(std::size_t size, bool list, std::size_t bound) {
  if (size < 1 || size > bound)
    throw UsageError("--size must lie in [1, " + std::to_string(bound) + "]");
  std::ostringstream out;
  if (!list) {
    out << generate_encodings(size, bound).size() << "\n";
    return out.str();
  }
  for_each_tree(
      size,
      [&](const MarkedTree& t, const TreeStats& s) {
        out << encode(t) << ' ' << s.height << ' ' << s.deepest << ' ' << s.marks << '\n';
      },
      bound);
  return out.str();
}

// ---------------------------------------------------------------------------
// biject

inline std::string cmd_biject(const std::string& input, const std::string& from, const std::string& to) {
  MarkedTree tree;
  if (from == "tree")
    tree = decode(input);
  else if (from == "decorated")
    tree = decorated_to_tree(parse_decorated(input));
  else if (from == "skew")
    tree = skew_to_tree(parse_skew(input));
  else
    throw UsageError("--from must be tree, decorated or skew");
  if (auto why = validate(tree); !why.empty()) throw UsageError(why);
  if (to == "tree") return encode(tree);
  if (to == "decorated") return to_string(tree_to_decorated(tree));
  if (to == "skew") return to_string(tree_to_skew(tree));
  throw UsageError("--to must be tree, decorated or skew");
}

// ---------------------------------------------------------------------------
// verify

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::size_t order = 30;
  std::size_t brute_force_bound = 11;
  std::string inject_fault;  // "" or "delta"
};

namespace detail {

inline bool agree(const BiSeries& a, const BiSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  return a.truncate(n) == b.truncate(n);
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyOptions& opt) {
  std::vector<CheckResult> results;
  auto record = [&](const std::string& name, const std::function<bool(std::string&)>& body) {
    CheckResult r{name, false, {}};
    try {
      r.passed = body(r.detail);
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  };
  const std::size_t N = opt.order;

  KernelBundle bundle = KernelBundle::compute(N + 1);
  if (opt.inject_fault == "delta") bundle.delta = bundle.v * (2 * bundle.v + 1) / (bundle.v + 3);
  for (const auto& id : identity_suite(bundle))
    results.push_back({"identity: " + id.name, id.passed, {}});

  const std::size_t hmax_a = std::min<std::size_t>(20, N);
  record("A_h recursive = closed = f_h/g_h, h <= " + std::to_string(hmax_a), [&](std::string&) {
    const auto rec = A_h_sequence(hmax_a, N);
    for (std::size_t h = 1; h <= hmax_a; ++h) {
      if (rec[h - 1] != gf_A_h(h, N, Route::closed)) return false;
      const HeightPair p = height_pair(h, N);
      if (rec[h - 1] != p.f / p.g) return false;
    }
    return true;
  });

  const std::size_t hmax_p = std::min<std::size_t>(12, N);
  record("p_h recursive = closed forms, 2 <= h <= " + std::to_string(hmax_p), [&](std::string& d) {
    const auto rec = p_h_sequence(hmax_p, N);
    const BiSeries R = series_R(N);
    for (std::size_t h = 2; h <= hmax_p; ++h) {
      const BiSeries& p = rec[h - 1];
      if (!detail::agree(p, p_h_closed(h, N, R)) || !detail::agree(p, p_h_closed_binomial(h, N)) ||
          !detail::agree(p, p_h_closed_roots(h, N))) {
        d = "mismatch at h = " + std::to_string(h);
        return false;
      }
    }
    return true;
  });
  record("p_h(z,0) = p_{h-1}(z,1)", [&](std::string&) {
    const auto rec = p_h_sequence(hmax_p, N);
    for (std::size_t h = 2; h <= hmax_p; ++h)
      if (eval_t(rec[h - 1], 0) != eval_t(rec[h - 2], 1)) return false;
    return true;
  });
  record("R: rational = summed = quotient form, R(z,0) = 1", [&](std::string&) {
    const BiSeries R = series_R(N);
    return R == series_R_summed(N) && R == series_R_quotient(N) && eval_t(R, 0) == Series::one(N);
  });

  const BiSeries G = gf_G(N, GRoute::recursive);
  record("G recursive = G explicit", [&](std::string&) {
    return G == gf_G(N, GRoute::explicit_sum);
  });
  const Series D = gf_dG(N, DGRoute::closed_sum);
  record("dG: derivative = closed_sum = level_recursion", [&](std::string&) {
    return D == gf_dG(N, DGRoute::derivative) && D == gf_dG(N, DGRoute::level_recursion);
  });
  record("sum k delta^k q^2k/(1-q^k) = sum k v^2k q^k/(1-q^k)", [&](std::string&) {
    const KernelBundle k = KernelBundle::compute(N);
    return closed_sum_delta(k) == closed_sum_v(k);
  });

  const Series A = gf_A(N);
  const std::size_t nmax = std::min(opt.brute_force_bound, N);
  record("brute force: counts, G and dG for n <= " + std::to_string(nmax), [&](std::string& d) {
    for (std::size_t n = 1; n <= nmax; ++n) {
      TPoly poly(n + 1);
      BigInt count = 0;
      BigInt total = 0;
      for_each_tree(n, [&](const MarkedTree&, const TreeStats& s) {
        poly[s.deepest] += 1;
        count += 1;
        total += s.deepest;
      });
      tpoly::trim(poly);
      if (A[n] != Rational(count) || G[n] != poly || D[n] != Rational(total)) {
        d = "mismatch at n = " + std::to_string(n);
        return false;
      }
    }
    return true;
  });
  const std::size_t hb = std::min<std::size_t>(9, nmax);
  record("brute force: height <= h counts match A_h for n, h <= " + std::to_string(hb), [&](std::string& d) {
    const auto Ah = A_h_sequence(hb, N);
    for (std::size_t n = 1; n <= hb; ++n) {
      std::vector<long> by_height(n + 1, 0);
      for_each_tree(n, [&](const MarkedTree&, const TreeStats& s) { ++by_height[s.height]; });
      long cumulative = 0;
      for (std::size_t h = 1; h <= hb; ++h) {
        if (h <= n) cumulative += by_height[h];
        if (Ah[h - 1][n] != Rational(cumulative)) {
          d = "mismatch at n = " + std::to_string(n) + ", h = " + std::to_string(h);
          return false;
        }
      }
    }
    return true;
  });
  const std::size_t nb = std::min<std::size_t>(10, opt.brute_force_bound);
  record("bijections round-trip for n <= " + std::to_string(nb), [&](std::string& d) {
    for (std::size_t n = 1; n <= nb; ++n) {
      bool ok = true;
      for_each_tree(n, [&](const MarkedTree& t, const TreeStats& s) {
        if (!ok) return;
        const DecoratedPath p = tree_to_decorated(t);
        const SkewPath sk = decorated_to_skew(p);
        const auto marks = std::count(p.steps.begin(), p.steps.end(), DecoratedStep::RedDown);
        ok = p.steps.size() == 2 * (n - 1) && static_cast<std::size_t>(marks) == s.marks &&
             decorated_to_tree(p) == t && skew_to_decorated(sk) == p && validate_skew(sk).valid;
      });
      if (!ok) {
        d = "failure at n = " + std::to_string(n);
        return false;
      }
    }
    return true;
  });
  return results;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out) {
  const auto results = run_verification(opt);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name;
    if (!r.detail.empty()) out << "  (" << r.detail << ")";
    out << "\n";
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// table

inline std::string render_table(const std::vector<RatioRow>& rows, Format format) {
  std::ostringstream out;
  switch (format) {
    case Format::csv:
      out << "nodes,deepest_nodes,trees,ratio\n";
      for (const auto& r : rows)
        out << r.n << ',' << r.deepest_total.get_str() << ',' << r.trees.get_str() << ',' << r.ratio_text << '\n';
      break;
    case Format::json:
      // Written by hand: the counts outgrow 64-bit integers and must stay exact.
      out << "[";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        out << (i ? ",\n " : "\n ") << "{\"n\": " << r.n << ", \"deepest_total\": " << r.deepest_total.get_str()
            << ", \"trees\": " << r.trees.get_str() << ", \"ratio_num\": " << r.ratio.numerator().get_str()
            << ", \"ratio_den\": " << r.ratio.denominator().get_str() << "}";
      }
      out << (rows.empty() ? "]\n" : "\n]\n");
      break;
    case Format::text:
      out << std::left << std::setw(6) << "nodes" << ' ' << std::setw(24) << "deepest_nodes" << ' '
          << std::setw(24) << "trees" << " ratio\n";
      for (const auto& r : rows)
        out << std::left << std::setw(6) << r.n << ' ' << std::setw(24) << r.deepest_total.get_str() << ' '
            << std::setw(24) << r.trees.get_str() << ' ' << r.ratio_text << '\n';
      break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// dispatch

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generating functions and enumeration for marked ordered trees"};
  app.name("deepnodes");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Config cfg;
  std::optional<std::size_t> order_flag;
  std::string format_name = "text";
  const std::map<std::string, Format> formats{{"text", Format::text}, {"csv", Format::csv}, {"json", Format::json}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--order", order_flag, "truncation order (env DEEPNODES_ORDER)")->check(CLI::PositiveNumber);
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
  };

  auto* series = app.add_subcommand("series", "expand a generating function");
  series->set_help_flag("--help", "print this help message and exit");  // frees -h for --h
  std::string gf;
  std::optional<std::size_t> h;
  std::string route;
  series->add_option("--gf", gf, "A, Ah, ph, G or dG")->required()->check(CLI::IsMember({"A", "Ah", "ph", "G", "dG"}));
  series->add_option("--h", h, "height bound for Ah and ph");
  series->add_option("--route", route, "computation route");
  add_common(series);

  auto* trees = app.add_subcommand("trees", "count or list marked ordered trees of a size");
  std::size_t size = 0;
  bool list = false;
  trees->add_option("--size", size, "number of nodes")->required();
  trees->add_flag("--list", list, "print every tree with height, deepest and marks");
  trees->add_option("--bound", cfg.brute_force_bound, "enumeration bound (<= 12)")->check(CLI::Range(1, 12));
  add_common(trees);

  auto* biject = app.add_subcommand("biject", "convert between trees, decorated and skew paths");
  std::string from;
  std::string to;
  std::string input;
  biject->add_option("--from", from)->required()->check(CLI::IsMember({"tree", "decorated", "skew"}));
  biject->add_option("--to", to)->required()->check(CLI::IsMember({"tree", "decorated", "skew"}));
  biject->add_option("input", input, "tree encoding or path string")->required();
  add_common(biject);

  auto* verify = app.add_subcommand("verify", "run the identity suite and every cross-check");
  std::string inject;
  verify->add_option("--bound", cfg.brute_force_bound, "brute-force size bound (<= 12)")->check(CLI::Range(1, 12));
  verify->add_option("--inject-fault", inject, "testing aid: corrupt a kernel series")
      ->check(CLI::IsMember({"delta"}));
  add_common(verify);

  auto* table = app.add_subcommand("table", "average number of deepest nodes by size");
  table->add_option("--max-n", cfg.max_table_n, "largest size")->check(CLI::PositiveNumber);
  table->add_option("--format", format_name, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  add_common(table);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    cfg.order = order_flag ? *order_flag : default_order();
    cfg.format = formats.at(format_name);
    std::ostringstream buffer;
    int code = kOk;
    if (*series) {
      buffer << cmd_series(gf, cfg.order, h, route) << "\n";
    } else if (*trees) {
      buffer << cmd_trees(size, list, cfg.brute_force_bound);
    } else if (*biject) {
      buffer << cmd_biject(input, from, to) << "\n";
    } else if (*verify) {
      code = cmd_verify({cfg.order, cfg.brute_force_bound, inject}, buffer);
    } else if (*table) {
      buffer << render_table(ratio_table(cfg.max_table_n), cfg.format);
    }
    if (cfg.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file || !(file << buffer.str()) || !file.flush()) {
        err << "error: cannot write '" << cfg.output << "'\n";
        return kUsage;
      }
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const deepnodes::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace deepnodes::cli
