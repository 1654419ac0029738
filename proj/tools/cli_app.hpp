#pragma once

// Command-line front end. run() parses argv, computes, and writes the artifact
// to --out or to `out`; diagnostics go to `err`.
//
// Exit codes: 0 success, 2 invalid input, 1 computation failure.

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "eulerprod/eulerprod.hpp"
#include "json_io.hpp"

namespace eulerprod::cli {

enum ExitCode { kOk = 0, kCompute = 1, kValidation = 2 };

/// Non-negative integer flag; accepts "1000", "1e6", "2^20".
inline std::uint64_t parse_count(const std::string& text, const std::string& flag) {
  const auto fail = [&] { return ValidationError(flag + ": expected a non-negative integer, got '" + text + "'"); };
  if (text.empty()) throw fail();
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const auto base = parse_count(text.substr(0, caret), flag);
    const auto power = parse_count(text.substr(caret + 1), flag);
    long double v = 1;
    for (std::uint64_t i = 0; i < power; ++i) v *= static_cast<long double>(base);
    if (v > 1e18L) throw fail();
    return static_cast<std::uint64_t>(v);
  }
  char* end = nullptr;
  const long double v = std::strtold(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !(v >= 0) || v > 1e18L || v != std::floor(v)) throw fail();
  return static_cast<std::uint64_t>(v);
}

inline std::vector<std::uint64_t> parse_count_list(const std::string& text, const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_count(item, flag));
  if (out.empty()) throw ValidationError(flag + ": empty list");
  return out;
}

/// "re" or "re,im".
inline std::complex<double> parse_complex(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  auto parse_real = [&](const std::string& part) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end != part.c_str() + part.size() || !std::isfinite(v))
      throw ValidationError(flag + ": expected a number or 're,im', got '" + text + "'");
    return v;
  };
  if (comma == std::string::npos) return {parse_real(text), 0.0};
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

inline std::vector<std::complex<double>> parse_point(const std::string& text, const std::string& flag) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) out.push_back(parse_complex(item, flag));
  return out;
}

struct Artifact {
  std::string text;
};

struct PolyInput {
  std::string poly;
  std::string file;
  std::string preset;

  std::string text() const {
    const int given = !poly.empty() + !file.empty() + !preset.empty();
    if (given != 1) throw ValidationError("give exactly one of --poly, --poly-file, --preset");
    if (!preset.empty()) {
      if (preset == "gsp6") return presets::kGsp6;
      if (preset == "innocent") return presets::kInnocent;
      if (preset == "case5") return presets::kCaseFive;
      if (preset == "cubic") throw ValidationError("the cubic preset is only available where W(x, y) is expected");
      throw ValidationError("unknown preset '" + preset + "' (gsp6, innocent, case5, cubic)");
    }
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ValidationError("cannot read " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }
    return poly;
  }

  BivariateLocalFactor bivariate() const {
    if (preset == "cubic" && poly.empty() && file.empty()) return presets::cubic_surface();
    const auto t = text();
    if (detect_varset(t) == VarSet::Multivariate) throw ValidationError("expected a polynomial in x and y");
    return parse_bivariate(t);
  }

  void add_to(CLI::App* app) {
    app->add_option("--poly", poly, "Polynomial expression");
    app->add_option("--poly-file", file, "File holding the polynomial expression");
    app->add_option("--preset", preset, "Bundled local factor: gsp6, innocent, case5, cubic");
  }
};

/// Number of variables before the prime variable: --n if given, else the
/// largest Xk index minus one.
inline MultiPoly multi_from(const std::string& text, std::size_t n_flag) {
  std::size_t top = 0;
  detect_varset(text, &top);
  const std::size_t n = n_flag ? n_flag : (top > 1 ? top - 1 : 1);
  return parse_multi(text, n);
}

inline std::string zeros_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BF_ZEROS"); env && *env) return env;
  throw ValidationError("no zeros file: pass --zeros or set BF_ZEROS");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Euler products: cyclotomic tests, zeta factorizations, boundary diagnostics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--format", format, "Artifact format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "Write the artifact here instead of stdout");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::function<Artifact()> action;
  auto json_only = [&](const char* name) {
    if (format != "json") throw ValidationError(std::string("--format csv is not available for ") + name);
  };
  auto dump = [](const io::json& j) { return Artifact{j.dump(2) + "\n"}; };

  // cyclotomic
  auto* cyc = app.add_subcommand("cyclotomic", "Decide whether h is a product of cyclotomic factors");
  PolyInput cyc_in;
  cyc_in.add_to(cyc);
  std::int64_t cyc_depth = 0;
  std::size_t cyc_n = 0;
  cyc->add_option("--depth", cyc_depth, "Elimination depth (multivariate; default: safe bound)");
  cyc->add_option("--n", cyc_n, "Variables before the prime variable (X1..Xn form)");
  cyc->callback([&] {
    action = [&] {
      json_only("cyclotomic");
      const auto text = cyc_in.text();
      switch (detect_varset(text)) {
        case VarSet::Univariate:
          return dump(io::verdict(cyclotomic_factor_uni(parse_uni(text))));
        case VarSet::Bivariate:
          return dump(io::verdict(cyclotomic_factor_multi(parse_bivariate(text), cyc_depth)));
        case VarSet::Multivariate:
          return dump(io::verdict(cyclotomic_factor_multi(multi_from(text, cyc_n), cyc_depth)));
      }
      throw ValidationError("unknown variable set");
    };
  });

  // estermann
  auto* est = app.add_subcommand("estermann", "Continuation verdict for prod_p h(p^-s)");
  PolyInput est_in;
  est_in.add_to(est);
  est->callback([&] {
    action = [&] {
      json_only("estermann");
      return dump(io::estermann(estermann_verdict(parse_uni(est_in.text()))));
    };
  });

  // factorize
  auto* fac = app.add_subcommand("factorize", "Zeta factorization of W(x, y) or h(X1..Xn+1)");
  PolyInput fac_in;
  fac_in.add_to(fac);
  std::int64_t fac_order = 8, fac_r = 1, fac_cutoff = 0;
  std::size_t fac_n = 0;
  fac->add_option("--order", fac_order, "Truncation order in y (bivariate)");
  fac->add_option("--r", fac_r, "Depth parameter r (multivariate)");
  fac->add_option("--cutoff", fac_cutoff, "Weight cutoff N_r (multivariate; default r * degree)");
  fac->add_option("--n", fac_n, "Variables before the prime variable (multivariate)");
  fac->callback([&] {
    action = [&] {
      if (fac_in.preset != "cubic" && detect_varset(fac_in.text()) == VarSet::Multivariate) {
        const auto f = factorize_multivariate(multi_from(fac_in.text(), fac_n), fac_r, fac_cutoff);
        if (format == "csv") {
          std::string s = "m,e,gamma\n";
          for (const auto& t : f.factors) {
            std::string m;
            for (std::size_t i = 0; i < t.m.size(); ++i) m += (i ? " " : "") + std::to_string(t.m[i]);
            s += m + "," + t.e.str() + "," + t.gamma.str() + "\n";
          }
          return Artifact{s};
        }
        return dump(io::factorization(f));
      }
      const auto f = factorize_bivariate(fac_in.bivariate(), fac_order);
      if (format == "csv") {
        std::string s = "a,b,e\n";
        for (const auto& t : f.factors) s += to_string(t.a) + "," + to_string(t.b) + "," + t.e.str() + "\n";
        return Artifact{s};
      }
      return dump(io::factorization(f));
    };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "Five-case classification of prod_p W(p, p^-s)");
  PolyInput cls_in;
  cls_in.add_to(cls);
  std::int64_t cls_depth = 12;
  std::string cls_bound = "10000";
  cls->add_option("--depth", cls_depth, "Factorization depth N")->capture_default_str();
  cls->add_option("--prime-bound", cls_bound, "Largest prime for the local-zero census")->capture_default_str();
  cls->callback([&] {
    action = [&] {
      json_only("classify");
      return dump(io::classification(classify(cls_in.bivariate(), cls_depth, parse_count(cls_bound, "--prime-bound"))));
    };
  });

  // zeros
  auto* zer = app.add_subcommand("zeros", "Zeros of s -> W(p, p^-s) in one fundamental strip");
  PolyInput zer_in;
  zer_in.add_to(zer);
  std::string zer_p;
  double zer_lo = -std::numeric_limits<double>::infinity(), zer_hi = std::numeric_limits<double>::infinity();
  zer->add_option("--p", zer_p, "Prime")->required();
  zer->add_option("--re-min", zer_lo, "Lower end of the Re s window");
  zer->add_option("--re-max", zer_hi, "Upper end of the Re s window");
  zer->callback([&] {
    action = [&] {
      const auto z = local_zeros(zer_in.bivariate(), parse_count(zer_p, "--p"), zer_lo, zer_hi);
      return format == "csv" ? Artifact{io::zeros_csv(z)} : dump(io::zeros(z));
    };
  });

  // cluster
  auto* clu = app.add_subcommand("cluster", "Nearest local zeros to a boundary point, prime by prime");
  PolyInput clu_in;
  clu_in.add_to(clu);
  std::string clu_primes = "101,1009,10007";
  std::optional<double> clu_re;
  double clu_im = 0;
  clu->add_option("--primes", clu_primes, "Comma-separated primes")->capture_default_str();
  clu->add_option("--target-re", clu_re, "Re of the target point (default beta)");
  clu->add_option("--target-im", clu_im, "Im of the target point");
  clu->callback([&] {
    action = [&] {
      const auto w = clu_in.bivariate();
      const double re = clu_re ? *clu_re : to_double(beta(w));
      const auto rows = boundary_cluster(w, re, clu_im, parse_count_list(clu_primes, "--primes"));
      return format == "csv" ? Artifact{io::cluster_csv(rows)} : dump(io::cluster(rows));
    };
  });

  // domain
  auto* dom = app.add_subcommand("domain", "Tube domain V(h; delta) from the Ext sets of h_k");
  PolyInput dom_in;
  dom_in.add_to(dom);
  std::size_t dom_n = 0;
  std::string dom_delta = "0", dom_point;
  dom->add_option("--n", dom_n, "Variables before the prime variable");
  dom->add_option("--delta", dom_delta, "Shift delta as p/q")->capture_default_str();
  dom->add_option("--point", dom_point, "Test membership of s = 're,im;re,im;...'");
  dom->callback([&] {
    action = [&] {
      json_only("domain");
      const auto v = domain_V(multi_from(dom_in.text(), dom_n), parse_rational(dom_delta));
      auto j = io::domain(v);
      if (!dom_point.empty()) j["contains"] = contains(v, parse_point(dom_point, "--point"));
      return dump(j);
    };
  });

  // toric
  auto* tor = app.add_subcommand("toric", "The toric example h_{A_n}");
  tor->require_subcommand(1);
  std::int64_t tor_n = 3, tor_t = 10, tor_cutoff = 4;
  auto* tor_count = tor->add_subcommand("count", "Cumulative counts of rational points by height, CSV t,count");
  tor_count->add_option("--n", tor_n)->capture_default_str();
  tor_count->add_option("--t", tor_t, "Largest height")->capture_default_str();
  tor_count->callback([&] {
    action = [&] {
      const auto hist = toric_height_histogram(tor_n, tor_t);
      if (format == "csv") return Artifact{io::histogram_csv(hist)};
      io::json rows = io::json::array();
      std::uint64_t acc = 0;
      for (std::size_t t = 1; t < hist.size(); ++t) rows.push_back({{"t", t}, {"count", acc += hist[t]}});
      return dump(rows);
    };
  });
  auto* tor_series = tor->add_subcommand("series", "Nonzero coefficients of the local series in a box");
  tor_series->add_option("--n", tor_n)->capture_default_str();
  tor_series->add_option("--cutoff", tor_cutoff, "Largest exponent per variable")->capture_default_str();
  tor_series->callback([&] {
    action = [&] {
      const auto s = toric_local_series(tor_n, tor_cutoff);
      io::json rows = io::json::array();
      std::string csv = "alpha,coef\n";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.at(i) == 0) continue;
        const auto a = s.exponents(i);
        rows.push_back({{"alpha", a}, {"coef", s.at(i)}});
        std::string key;
        for (std::size_t j = 0; j < a.size(); ++j) key += (j ? " " : "") + std::to_string(a[j]);
        csv += key + "," + std::to_string(s.at(i)) + "\n";
      }
      return format == "csv" ? Artifact{csv} : dump(rows);
    };
  });
  auto* tor_degree = tor->add_subcommand("degree", "d_n = C(2n-1, n) - n - 1");
  tor_degree->add_option("--n", tor_n)->capture_default_str();
  tor_degree->callback([&] {
    action = [&] {
      json_only("toric degree");
      return dump({{"n", tor_n}, {"degree", io::integer(toric_degree(tor_n))}});
    };
  });

  // goldbach
  auto* gb = app.add_subcommand("goldbach", "Lambda convolutions, residuals and Phi_2");
  gb->require_subcommand(1);
  std::string gb_x, gb_N = "100000", gb_zeros, gb_method = "fast";
  std::size_t gb_K = 100;
  std::string gb_s = "3";
  auto* gb_sum = gb->add_subcommand("sum", "Residual table S(x) - x^2/2 - H_2(x)");
  gb_sum->add_option("--x", gb_x, "Comma-separated x values (default 1000 * 2^k up to N)");
  gb_sum->add_option("--N", gb_N, "Series length")->capture_default_str();
  gb_sum->add_option("--zeros", gb_zeros, "Zeta zeros file (default $BF_ZEROS)");
  gb_sum->add_option("--K", gb_K, "Number of zero pairs")->capture_default_str();
  gb_sum->add_option("--method", gb_method, "Convolution path")->check(CLI::IsMember({"fast", "naive"}));
  gb_sum->callback([&] {
    action = [&] {
      const auto N = parse_count(gb_N, "--N");
      std::vector<std::uint64_t> xs;
      if (gb_x.empty())
        for (std::uint64_t x = 1000; x <= N; x *= 2) xs.push_back(x);
      else
        xs = parse_count_list(gb_x, "--x");
      for (auto x : xs)
        if (x > N) throw ValidationError("--x " + std::to_string(x) + " exceeds --N");
      const auto zeros = gb_K ? load_zeros(zeros_path(gb_zeros)) : ZetaZerosTable{};
      const auto g2 = convolve_gr(lambda_table(N), 2,
                                  gb_method == "fast" ? ConvolutionMethod::Fast : ConvolutionMethod::Naive);
      const auto rows = residual_report(g2, xs, gb_K, zeros);
      return format == "csv" ? Artifact{io::residual_csv(rows)} : dump(io::residual(rows));
    };
  });
  auto* gb_phi = gb->add_subcommand("phi2", "Phi_2(s) truncated at N with a tail bound");
  gb_phi->add_option("--s", gb_s, "s as 're' or 're,im'")->capture_default_str();
  gb_phi->add_option("--N", gb_N, "Truncation")->capture_default_str();
  gb_phi->callback([&] {
    action = [&] {
      json_only("goldbach phi2");
      const auto v = phi2_eval(parse_complex(gb_s, "--s"), parse_count(gb_N, "--N"));
      return dump({{"value", io::complex(v.value)}, {"tail_bound", io::num(v.tail_bound)}});
    };
  });

  // gsp6
  auto* gs = app.add_subcommand("gsp6", "Coefficients and smoothed sums of the GSp6 zeta function");
  gs->require_subcommand(1);
  std::string gs_N;
  double gs_x = 1000;
  auto* gs_coeffs = gs->add_subcommand("coeffs", "a_n at cubes n <= N, CSV n,a_n");
  gs_coeffs->add_option("--N", gs_N, "Range")->required();
  gs_coeffs->callback([&] {
    action = [&] {
      const auto c = gsp6_coeffs(parse_count(gs_N, "--N"));
      if (format == "csv") return Artifact{io::gsp6_csv(c)};
      io::json rows = io::json::array();
      for (const auto& [n, a] : c.a) rows.push_back({{"n", n}, {"a_n", io::integer(a)}});
      return dump(rows);
    };
  });
  auto* gs_smooth = gs->add_subcommand("smoothed", "A(x) = sum a_n e^{-n/x}");
  gs_smooth->add_option("--x", gs_x, "x")->required();
  gs_smooth->add_option("--N", gs_N, "Coefficient range (default ceil(30 x))");
  gs_smooth->callback([&] {
    action = [&] {
      json_only("gsp6 smoothed");
      if (!(gs_x > 0 && gs_x <= 1e7)) throw ValidationError("--x must lie in (0, 1e7]");
      const auto N = gs_N.empty() ? static_cast<std::uint64_t>(std::ceil(30 * gs_x)) : parse_count(gs_N, "--N");
      const auto v = gsp6_smoothed(gs_x, N);
      return dump({{"x", io::num(gs_x)}, {"N", N}, {"value", io::num(v.value)}, {"tail_bound", io::num(v.tail_bound)}});
    };
  });
  auto* gs_terms = gs->add_subcommand("terms", "Exponents of the smoothed explicit formula");
  gs_terms->callback([&] {
    action = [&] {
      json_only("gsp6 terms");
      return dump(io::term_structure(gsp6_term_structure()));
    };
  });

  // zeta
  auto* zt = app.add_subcommand("zeta", "Riemann zeta values, zero tables and Euler products");
  zt->require_subcommand(1);
  std::string zt_s = "2", zt_P = "100000", zt_zeros;
  PolyInput zt_in;
  auto* zt_eval = zt->add_subcommand("eval", "zeta(s)");
  zt_eval->add_option("--s", zt_s, "s as 're' or 're,im'")->capture_default_str();
  zt_eval->callback([&] {
    action = [&] {
      json_only("zeta eval");
      return dump({{"value", io::complex(zeta_eval(parse_complex(zt_s, "--s")))}});
    };
  });
  auto* zt_euler = zt->add_subcommand("euler", "prod_{p <= P} W(p, p^-s) with a relative tail bound");
  zt_in.add_to(zt_euler);
  zt_euler->add_option("--s", zt_s, "s as 're' or 're,im'")->required();
  zt_euler->add_option("--P", zt_P, "Prime cutoff")->capture_default_str();
  zt_euler->callback([&] {
    action = [&] {
      json_only("zeta euler");
      const auto w = zt_in.bivariate();
      const auto v = euler_product_eval(w, parse_complex(zt_s, "--s"), parse_count(zt_P, "--P"), threads);
      return dump({{"value", io::complex(v.value)},
                   {"tail_bound", io::num(v.tail_bound)},
                   {"abscissa", io::rat(abscissa_of_convergence(w))}});
    };
  });
  auto* zt_table = zt->add_subcommand("table", "Load and validate a zeros file");
  zt_table->add_option("--zeros", zt_zeros, "Zeros file (default $BF_ZEROS)");
  zt_table->callback([&] {
    action = [&] {
      json_only("zeta table");
      const auto t = load_zeros(zeros_path(zt_zeros));
      return dump({{"source", t.source},
                   {"count", t.gammas.size()},
                   {"precision", t.precision},
                   {"first", io::num(t.gammas.front())},
                   {"last", io::num(t.gammas.back())}});
    };
  });

  // independence
  auto* ind = app.add_subcommand("independence", "Smallest |g1 + g2 - g3 - g4| over the first K zeros");
  std::string ind_zeros;
  std::size_t ind_K = 30;
  double ind_alpha = 1.5;
  ind->add_option("--zeros", ind_zeros, "Zeros file (default $BF_ZEROS)");
  ind->add_option("--K", ind_K)->capture_default_str();
  ind->add_option("--alpha", ind_alpha)->capture_default_str();
  ind->callback([&] {
    action = [&] {
      json_only("independence");
      return dump(io::independence(independence_margin(load_zeros(zeros_path(ind_zeros)), ind_K, ind_alpha)));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    const auto artifact = action();
    if (out_path.empty()) {
      out << artifact.text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!(f << artifact.text)) throw ComputeError("cannot write " + out_path);
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCompute;
  }
}

}  // namespace eulerprod::cli
