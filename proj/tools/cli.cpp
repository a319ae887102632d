#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fmlab/action.hpp"
#include "fmlab/counterexample.hpp"
#include "fmlab/error.hpp"
#include "fmlab/serialize.hpp"
#include "fmlab/supports.hpp"
#include "fmlab/thin.hpp"
#include "fmlab/verify/report.hpp"

#ifndef FMLAB_FIXTURE_DIR
#define FMLAB_FIXTURE_DIR "fixtures"
#endif

namespace fmlab::cli {
namespace {

namespace fs = std::filesystem;

struct RunConfig {
  std::uint32_t p = 2;
  Index horizon = 3;
  std::uint64_t seed = 42;
  bool json = false;
  std::uint64_t cap_enum = kDefaultEnumerationCap;
  std::size_t cap_tower = kDefaultTowerCap;

  Prime prime() const { return Prime(p); }
};

// Paths that do not exist as given are looked up in the bundled fixtures.
fs::path resolve(const std::string& name) {
  const fs::path given(name);
  if (fs::exists(given)) return given;
  const fs::path bundled = fs::path(FMLAB_FIXTURE_DIR) / given;
  if (fs::exists(bundled)) return bundled;
  const fs::path by_name = fs::path(FMLAB_FIXTURE_DIR) / given.filename();
  if (fs::exists(by_name)) return by_name;
  throw UsageError("no such file: " + name);
}

// Inline JSON if it starts like JSON, otherwise a file name.
Json load_json(const std::string& arg) {
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(resolve(arg));
    if (!in) throw UsageError("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError("malformed JSON in " + (text == arg ? std::string("argument") : arg) + ": " + e.what());
  }
}

// "0:1;1:1,2:2" with an empty string for the empty list.
std::vector<Vector> parse_vector_list(const std::string& text, Prime p) {
  std::vector<Vector> out;
  if (text.empty()) return out;
  for (auto part : detail::split(text, ';')) out.push_back(parse_vector(part, p));
  return out;
}

std::string join_vectors(std::span<const Vector> vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "; " : "") + display(vs[i]);
  return s.empty() ? "∅" : s;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  for (auto part : detail::split(text, ',')) out.push_back(detail::parse_natural(part, text));
  return out;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

class Commands {
 public:
  Commands(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Finite-horizon computations for the atom model over F_p", "fmlab"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--p", cfg_.p, "prime field order")->capture_default_str();
    app.add_option("--horizon", cfg_.horizon, "coordinate cutoff for W and G")->capture_default_str();
    app.add_option("--seed", cfg_.seed, "seed for randomized suites")->capture_default_str();
    app.add_flag("--json", cfg_.json, "emit JSON instead of text");
    app.add_option("--cap-enum", cfg_.cap_enum, "largest enumeration allowed")->capture_default_str();
    app.add_option("--cap-tower", cfg_.cap_tower, "largest pair tower allowed")->capture_default_str();
    p_option_ = app.get_option("--p");

    std::function<int()> action;
    auto sub = [&](const char* name, const char* help) {
      auto* s = app.add_subcommand(name, help);
      s->fallthrough();
      return s;
    };
    auto object_opt = [](CLI::App* s, std::string& x) {
      s->add_option("--x", x, "HF object as JSON, inline or a file")->required();
    };

    std::string x, g, a, fixture, stream, certificate, s_levels;
    Index k = 0, max_k = 0;
    std::uint64_t n = 0;
    std::size_t height = 3, count = 4, window = ExtractionOptions{}.window, margin = 1;
    bool prefix_sums = false;

    auto* act = sub("act", "apply a group element to an object");
    object_opt(act, x);
    act->add_option("--g", g, "group element coordinates, e.g. 1,0,1")->required();
    act->callback([&] { action = [&] { return cmd_act(x, g); }; });

    auto* orb = sub("orbit", "orbit of an object under G_(A)");
    object_opt(orb, x);
    orb->add_option("--A", a, "vectors separated by ';'");
    orb->callback([&] { action = [&] { return cmd_orbit(x, a); }; });

    auto* stab = sub("stabilizer", "stabilizer of an object inside G_(A)");
    object_opt(stab, x);
    stab->add_option("--A", a, "vectors separated by ';'");
    stab->callback([&] { action = [&] { return cmd_stabilizer(x, a); }; });

    auto* sc = sub("support-check", "whether A supports an object");
    object_opt(sc, x);
    sc->add_option("--A", a, "vectors separated by ';'");
    sc->callback([&] { action = [&] { return cmd_support_check(x, a); }; });

    auto* rs = sub("reduce-support", "reduce A u B to A u {b} for an object in a p-element set");
    rs->add_option("--fixture", fixture, "JSON with p, horizon, x, X, A, B")->required();
    rs->callback([&] { action = [&] { return cmd_reduce(fixture); }; });

    auto* dens = sub("density", "prefix density d_k of a finite set");
    dens->add_option("--A", a, "vectors separated by ';'")->required();
    auto* k_opt = dens->add_option("--k", k, "prefix length");
    auto* prof_opt = dens->add_option("--profile", max_k, "CSV of d_k for k = 1..N");
    k_opt->excludes(prof_opt);
    dens->callback([&] {
      if (!k_opt->count() && !prof_opt->count()) throw CLI::RequiredError("--k or --profile");
      action = [&, profile = prof_opt->count() > 0] { return cmd_density(a, k, profile ? max_k : 0); };
    });

    auto* ls = sub("logstar", "iterated logarithm log*_p(n)");
    ls->add_option("--n", n, "argument, at least 1")->required();
    ls->callback([&] { action = [&] { return cmd_logstar(n); }; });

    auto* ex = sub("extract-thin", "thin subsequence of an eventually constant stream");
    auto* stream_opt = ex->add_option("--stream", stream, "JSON with p and a stream array");
    auto* ps_opt = ex->add_flag("--prefix-sums", prefix_sums, "use x_n = e_0 + ... + e_n");
    stream_opt->excludes(ps_opt);
    ex->add_option("--count", count, "number of indices to select")->capture_default_str();
    ex->add_option("--window", window, "stream elements to inspect")->capture_default_str();
    ex->add_option("--margin", margin, "elements required after each chosen index")->capture_default_str();
    ex->callback([&] {
      if (!stream_opt->count() && !prefix_sums) throw CLI::RequiredError("--stream or --prefix-sums");
      action = [&] { return cmd_extract(stream, count, {window, margin}); };
    });

    auto* cert = sub("certify", "validate a thinness certificate");
    cert->add_option("--certificate", certificate, "certificate JSON, inline or a file")->required();
    cert->callback([&] { action = [&] { return cmd_certify(certificate); }; });

    auto* tw = sub("tower", "the pair tower X_0..X_{N-1} over F_2");
    tw->add_option("--N", height, "number of levels")->capture_default_str();
    tw->callback([&] { action = [&] { return cmd_tower(height); }; });

    auto* rp = sub("refute-pcf", "defeat a candidate support S of a selection");
    rp->add_option("--N", height, "number of levels")->capture_default_str();
    rp->add_option("--S", s_levels, "levels in S, e.g. 0,2");
    rp->callback([&] { action = [&] { return cmd_refute(height, s_levels); }; });

    auto* va = sub("verify-all", "run every property suite and acceptance check");
    va->callback([&] { action = [&] { return cmd_verify_all(); }; });

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
      validate_config();
    } catch (const CLI::CallForHelp&) {
      out_ << help_for(app);
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << help_for(app);
      return kUsage;
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << "\n\n" << help_for(app);
      return kUsage;
    }

    try {
      return action();
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const ResourceError& e) {
      err_ << "resource limit: " << e.what() << '\n';
      return kResource;
    } catch (const ValidationError& e) {
      err_ << "invalid input: " << e.what() << '\n';
      return kFailure;
    } catch (const ConsistencyError& e) {
      err_ << "internal inconsistency: " << e.what() << '\n';
      return kFailure;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kFailure;
    }
  }

 private:
  static std::string help_for(const CLI::App& app) {
    for (const auto* s : app.get_subcommands()) return s->help();
    return app.help();
  }

  void validate_config() const {
    if (!is_prime(cfg_.p)) throw UsageError("--p " + std::to_string(cfg_.p) + " is not a prime");
    if (cfg_.horizon == 0) throw UsageError("--horizon must be at least 1");
    if (cfg_.cap_enum == 0 || cfg_.cap_tower == 0) throw UsageError("caps must be positive");
  }

  // Fixtures carry their own prime; an explicit --p must agree with it.
  Prime fixture_prime(const Json& j) const {
    const auto p = detail::require_natural(detail::require_field(j, "p"), "p");
    if (!is_prime(p)) throw ValidationError("fixture prime " + std::to_string(p) + " is not prime");
    if (p_option_->count() && p != cfg_.p) {
      throw UsageError("--p " + std::to_string(cfg_.p) + " conflicts with the input's p = " + std::to_string(p));
    }
    return Prime(static_cast<std::uint32_t>(p));
  }

  HFObject object(const std::string& arg) const { return hf_from_json(load_json(arg), cfg_.prime()); }

  int cmd_act(const std::string& x_arg, const std::string& g_arg) {
    const HFObject x = object(x_arg);
    const GroupElement g = parse_group_element(g_arg, cfg_.prime());
    if (g.horizon() != cfg_.horizon) {
      throw UsageError("--g has " + std::to_string(g.horizon()) + " coordinates but the horizon is " +
                       std::to_string(cfg_.horizon));
    }
    detail::require_below_horizon(x, cfg_.horizon, "act");
    const HFObject y = act_hf(x, g);
    if (cfg_.json) {
      emit(out_, Json{{"x", to_json(x)}, {"g", to_json(g)}, {"result", to_json(y)}});
    } else {
      out_ << to_string(y) << '\n';
    }
    return kOk;
  }

  int cmd_orbit(const std::string& x_arg, const std::string& a_arg) {
    const HFObject x = object(x_arg);
    const auto a = parse_vector_list(a_arg, cfg_.prime());
    detail::require_below_horizon(x, cfg_.horizon, "orbit");
    const auto orb = orbit(x, pointwise_stabilizer(cfg_.prime(), a, cfg_.horizon), cfg_.cap_enum);
    if (cfg_.json) {
      Json elems = Json::array();
      for (const auto& y : orb) elems.push_back(to_json(y));
      emit(out_, Json{{"A", to_json(a)}, {"size", orb.size()}, {"orbit", std::move(elems)}});
    } else {
      for (const auto& y : orb) out_ << to_string(y) << '\n';
    }
    return kOk;
  }

  int cmd_stabilizer(const std::string& x_arg, const std::string& a_arg) {
    const HFObject x = object(x_arg);
    const auto a = parse_vector_list(a_arg, cfg_.prime());
    detail::require_below_horizon(x, cfg_.horizon, "stabilizer");
    const Subgroup h = pointwise_stabilizer(cfg_.prime(), a, cfg_.horizon);
    const Subgroup s = stabilizer_in(x, h, cfg_.cap_enum);
    const auto gens = s.generators();
    if (cfg_.json) {
      Json g = Json::array();
      for (const auto& e : gens) g.push_back(to_json(e));
      emit(out_, Json{{"A", to_json(a)}, {"dimension", s.dimension()}, {"order", s.order()}, {"generators", std::move(g)}});
    } else {
      out_ << "order " << s.order() << " (dimension " << s.dimension() << ")\n";
      for (const auto& e : gens) out_ << to_string(e) << '\n';
    }
    return kOk;
  }

  int cmd_support_check(const std::string& x_arg, const std::string& a_arg) {
    const HFObject x = object(x_arg);
    const auto a = parse_vector_list(a_arg, cfg_.prime());
    const bool ok = is_support(cfg_.prime(), a, x, cfg_.horizon);
    if (cfg_.json) {
      emit(out_, Json{{"A", to_json(a)}, {"supports", ok}});
    } else {
      out_ << (ok ? "true" : "false") << '\n';
    }
    return kOk;
  }

  int cmd_reduce(const std::string& path) {
    const Json j = load_json(path);
    const Prime p = fixture_prime(j);
    const auto horizon = static_cast<Index>(detail::require_natural(detail::require_field(j, "horizon"), "horizon"));
    ReductionInput in{p,
                      horizon,
                      hf_from_json(detail::require_field(j, "x"), p),
                      hf_from_json(detail::require_field(j, "X"), p),
                      vectors_from_json(detail::require_field(j, "A"), p),
                      cfg_.cap_enum};
    const auto extra = vectors_from_json(detail::require_field(j, "B"), p);
    const auto result = find_small_support(in, extra);
    const std::optional<Vector> b = result.remaining.empty() ? std::nullopt : std::optional(result.remaining[0]);
    if (cfg_.json) {
      emit(out_, Json{{"A", to_json(in.base)},
                      {"B", to_json(extra)},
                      {"b", optional_json(b)},
                      {"support", to_json(result.support)},
                      {"trace", to_json(result.trace)}});
      return kOk;
    }
    for (const auto& s : result.trace) {
      out_ << "B = " << join_vectors(s.before);
      if (s.shortcut) {
        out_ << "  ->  " << join_vectors(s.after) << " (already a support)\n";
      } else {
        out_ << "  h = " << to_string(*s.h) << "  m = " << *s.m << "  n = " << *s.n << "  ->  b = " << display(*s.b)
             << '\n';
      }
    }
    out_ << "b = " << (b ? to_string(*b) : std::string("none, A alone supports x")) << '\n';
    out_ << "support = " << join_vectors(result.support) << '\n';
    return kOk;
  }

  int cmd_density(const std::string& a_arg, Index k, Index max_k) {
    const auto a = parse_vector_list(a_arg, cfg_.prime());
    if (max_k > 0) {
      const auto rows = density_profile(cfg_.prime(), a, max_k);
      if (cfg_.json) {
        Json out = Json::array();
        for (const auto& r : rows) {
          out.push_back(Json{{"k", r.k}, {"d_k", r.d_k}, {"logstar_dk", r.logstar_dk}, {"logstar_k", r.logstar_k}});
        }
        emit(out_, out);
      } else {
        out_ << to_csv(rows);
      }
      return kOk;
    }
    const auto d = density(a, k);
    if (cfg_.json) {
      emit(out_, Json{{"A", to_json(a)}, {"k", k}, {"d_k", d}});
    } else {
      out_ << d << '\n';
    }
    return kOk;
  }

  int cmd_logstar(std::uint64_t n) {
    const auto v = log_star(n, cfg_.prime());
    if (cfg_.json) {
      emit(out_, Json{{"p", cfg_.p}, {"n", n}, {"logstar", v}});
    } else {
      out_ << v << '\n';
    }
    return kOk;
  }

  int cmd_extract(const std::string& stream_arg, std::size_t count, ExtractionOptions opts) {
    std::optional<VectorStream> stream;
    if (stream_arg.empty()) {
      stream = VectorStream::prefix_sums(cfg_.prime());
    } else {
      const Json j = load_json(stream_arg);
      const Prime p = fixture_prime(j);
      stream = VectorStream::from_list(p, vectors_from_json(detail::require_field(j, "stream"), p));
    }
    const auto result = extract_thin_subsequence(*stream, count, opts);
    if (cfg_.json) {
      emit(out_, Json{{"indices", result.indices},
                      {"members", to_json(result.members)},
                      {"certificate", to_json(result.certificate)}});
    } else {
      out_ << "indices:";
      for (auto i : result.indices) out_ << ' ' << i;
      out_ << "\ncertificate: " << to_json(result.certificate).dump() << '\n';
    }
    return kOk;
  }

  int cmd_certify(const std::string& arg) {
    const ThinCertificate c = certificate_from_json(load_json(arg));
    const auto verdict = certify_thin(c);
    if (cfg_.json) {
      emit(out_, Json{{"valid", verdict.valid}, {"diagnostics", verdict.diagnostics}});
    } else {
      out_ << (verdict.valid ? "valid" : "invalid") << '\n';
      for (const auto& d : verdict.diagnostics) out_ << "  " << d << '\n';
    }
    return verdict.valid ? kOk : kCheckFailed;
  }

  void require_pair_prime() const {
    if (p_option_->count() && cfg_.p != 2) throw UsageError("the pair tower is defined over F_2 only");
  }

  int cmd_tower(std::size_t height) {
    require_pair_prime();
    const PairTower t = build_tower(height, cfg_.cap_tower);
    if (cfg_.json) {
      Json levels = Json::array();
      for (const auto& l : t.levels) levels.push_back(to_json(l));
      emit(out_, Json{{"N", height}, {"p", 2}, {"levels", std::move(levels)}});
    } else {
      for (std::size_t i = 0; i < t.levels.size(); ++i) out_ << "X_" << i << " = " << to_string(t.levels[i]) << '\n';
    }
    return kOk;
  }

  int cmd_refute(std::size_t height, const std::string& s_arg) {
    require_pair_prime();
    const PairTower t = build_tower(height, cfg_.cap_tower);
    const auto s = parse_index_list(s_arg);
    const auto report = refute_pcf(t, s);
    if (cfg_.json) {
      emit(out_, to_json(report));
      return kOk;
    }
    out_ << "i = " << report.level << "  g = " << to_string(report.swap) << '\n';
    for (const auto& l : report.levels) {
      out_ << "X_" << l.level << ": every element moved\n";
    }
    out_ << report.selections_checked << " selections checked, none fixed by g\n";
    return kOk;
  }

  int cmd_verify_all() {
    verify::Config vc{cfg_.p, cfg_.horizon, cfg_.seed, cfg_.cap_enum, cfg_.cap_tower};
    const Json report = verify::build_report(vc, [&](const verify::SuiteResult& r) {
      if (cfg_.json) return;
      out_ << (r.passed() ? "PASS " : "FAIL ") << r.name() << " (" << r.checks() << " checks)\n";
      for (const auto& m : r.messages()) out_ << "  " << m << '\n';
    });
    const bool passed = report["passed"].get<bool>();
    if (cfg_.json) {
      emit(out_, report);
    } else {
      out_ << (passed ? "all checks passed" : "some checks failed") << '\n';
    }
    return passed ? kOk : kCheckFailed;
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  const CLI::Option* p_option_ = nullptr;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Commands(out, err).run(args);
}

}  // namespace fmlab::cli
