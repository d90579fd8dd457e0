#include "sievelab/cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "sievelab/dplus.hpp"
#include "sievelab/equidist.hpp"
#include "sievelab/expsums.hpp"
#include "sievelab/heath_brown.hpp"
#include "sievelab/report.hpp"
#include "sievelab/triple.hpp"
#include "sievelab/wellfact.hpp"

namespace sievelab {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<Rat> rat_family(const std::string& fam, long long N,
                            uint64_t seed) {
  std::vector<Rat> v((size_t)N);
  std::mt19937_64 rng(seed);
  for (long long i = 0; i < N; ++i) {
    long long n = N + 1 + i;
    if (fam == "ones")
      v[i] = Rat(1);
    else if (fam == "mu")
      v[i] = Rat(mobius(n));
    else if (fam == "pm-random")
      v[i] = Rat((rng() & 1) ? 1 : -1);
    else
      throw domain_error("unknown sequence family: " + fam);
  }
  return v;
}

std::vector<double> dbl_family(const std::string& fam, long long M,
                               uint64_t seed) {
  std::vector<double> v((size_t)M);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (long long i = 0; i < M; ++i) {
    long long m = M + 1 + i;
    if (fam == "ones")
      v[i] = 1.0;
    else if (fam == "mu")
      v[i] = (double)mobius(m);
    else if (fam == "pm-random")
      v[i] = uni(rng);
    else
      throw domain_error("unknown sequence family: " + fam);
  }
  return v;
}

std::string render_check(const CheckRecord& rec) {
  std::string out = std::string("all_pass=") + (rec.all_pass ? "yes" : "no") +
                    "\n";
  for (const IneqEval& row : rec.rows) {
    out += row.label;
    out += row.pass ? " pass" : " FAIL";
    out += " margin=";
    if (row.exact_margin)
      out += row.exact_margin->str();
    else
      out += fmt_double(row.margin_log_x);
    out += '\n';
  }
  return out;
}

struct Ctx {
  std::string out_path = "-";
  std::string format = "csv";
  int workers = 0;
  uint64_t seed = 0;

  void emit(const DiscrepancyReport& rep) const {
    write_output(out_path, format == "jsonl" ? to_jsonl(rep) : to_csv(rep));
  }
  void text(const std::string& s) const { write_output(out_path, s); }
};

void build_app(CLI::App& app, Ctx& ctx, std::function<void()>& action) {
  app.require_subcommand(1);
  app.add_option("--out", ctx.out_path, "output file, - for stdout");
  app.add_option("--format", ctx.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--workers", ctx.workers, "worker threads, 0 = auto");
  app.add_option("--seed", ctx.seed, "seed for randomized sequence families");

  // hb-verify
  {
    auto* sub = app.add_subcommand(
        "hb-verify", "check the combinatorial Lambda identity termwise");
    sub->fallthrough();
    auto limit = std::make_shared<long long>(5000);
    auto k = std::make_shared<int>(2);
    auto cutoff = std::make_shared<std::string>("2");
    sub->add_option("--limit", *limit, "check all n <= limit");
    sub->add_option("--k", *k, "identity order k");
    sub->add_option("--cutoff", *cutoff, "cutoff multiplier, rational p/q");
    sub->callback([&, limit, k, cutoff] {
      action = [&, limit, k, cutoff] {
        HBVerifyReport rep = verify_heath_brown(*limit, *k,
                                                Rat::parse(*cutoff),
                                                ctx.workers);
        std::string out = "checked=" + std::to_string(rep.checked) + "\n" +
                          "mismatches=" +
                          std::to_string(rep.mismatches.size()) + "\n";
        for (size_t i = 0; i < rep.mismatches.size() && i < 20; ++i)
          out += "mismatch_n=" + std::to_string(rep.mismatches[i]) + "\n";
        ctx.text(out);
      };
    });
  }

  // dplus-enum
  {
    auto* sub = app.add_subcommand("dplus-enum",
                                   "enumerate the sieve support set");
    sub->fallthrough();
    auto level = std::make_shared<std::string>();
    auto limit = std::make_shared<long long>(0);
    sub->add_option("--level", *level, "level D as a rational p/q")
        ->required();
    sub->add_option("--limit", *limit, "enumerate members <= limit")
        ->required();
    sub->callback([&, level, limit] {
      action = [&, level, limit] {
        auto members = enumerate_Dplus(Rat::parse(*level), *limit);
        std::string out = "count=" + std::to_string(members.size()) + "\n";
        for (const FactoredInteger& m : members)
          out += std::to_string(m.value) + "\n";
        ctx.text(out);
      };
    });
  }

  // dplus-split
  {
    auto* sub = app.add_subcommand("dplus-split",
                                   "greedy two-way split of a support point");
    sub->fallthrough();
    auto d = std::make_shared<long long>(0);
    auto level = std::make_shared<std::string>();
    auto d1 = std::make_shared<std::string>();
    auto d2 = std::make_shared<std::string>();
    sub->add_option("--d", *d, "support point to split")->required();
    sub->add_option("--level", *level, "level D, rational")->required();
    sub->add_option("--d1", *d1, "cap D1, rational")->required();
    sub->add_option("--d2", *d2, "cap D2, rational")->required();
    sub->callback([&, d, level, d1, d2] {
      action = [&, d, level, d1, d2] {
        auto [a, b] = split_two(factorize(*d), Rat::parse(*level),
                                Rat::parse(*d1), Rat::parse(*d2));
        ctx.text("d1=" + std::to_string(a) + "\nd2=" + std::to_string(b) +
                 "\n");
      };
    });
  }

  // shared flags for triple-factor / triple-oracle
  struct TripleOpts {
    std::string mode = "exponent";
    std::string delta = "1/2000";
    std::string eps = "1/100";
    std::string set = "prop91";
    std::string n_exp;
    std::vector<std::string> nu;
    std::string mass = "0";
    long long x = 0, d = 1, n = 0, a = 1;
  };
  auto add_triple_opts = [](CLI::App* sub, std::shared_ptr<TripleOpts> o) {
    sub->add_option("--mode", o->mode, "exponent or integer")
        ->check(CLI::IsMember({"exponent", "integer"}));
    sub->add_option("--delta", o->delta, "delta, rational");
    sub->add_option("--eps", o->eps, "epsilon, rational");
    sub->add_option("--set", o->set, "constraint set")
        ->check(CLI::IsMember({"prop91", "mainprop"}));
    sub->add_option("--n-exp", o->n_exp, "exponent of N (exponent mode)");
    sub->add_option("--nu", o->nu,
                    "named prime exponents, non-increasing (repeatable)");
    sub->add_option("--mass", o->mass, "divisible small-prime mass");
    sub->add_option("--x", o->x, "x (integer mode)");
    sub->add_option("--d", o->d, "d to factor (integer mode)");
    sub->add_option("--n", o->n, "N (integer mode)");
    sub->add_option("--a", o->a, "residue a (integer mode)");
  };
  auto make_tuple = [](const TripleOpts& o) {
    ExponentTuple t;
    for (const std::string& s : o.nu) t.nu.push_back(Rat::parse(s));
    t.mass = Rat::parse(o.mass);
    return t;
  };
  auto make_params = [](const TripleOpts& o) {
    GlobalParams p;
    p.x = o.x;
    p.a = o.a;
    p.epsilon = Rat::parse(o.eps);
    p.delta = Rat::parse(o.delta);
    p.validate();
    return p;
  };
  auto pick_set = [](const TripleOpts& o) {
    return o.set == "mainprop" ? ConstraintSet::mainprop()
                               : ConstraintSet::prop91();
  };

  // triple-factor
  {
    auto* sub = app.add_subcommand(
        "triple-factor", "case-analysis factorization d = d1 d2 d3");
    sub->fallthrough();
    auto o = std::make_shared<TripleOpts>();
    add_triple_opts(sub, o);
    sub->callback([&, o, make_tuple, make_params, pick_set] {
      action = [&, o, make_tuple, make_params, pick_set] {
        std::string out;
        if (o->mode == "exponent") {
          if (o->n_exp.empty()) throw domain_error("--n-exp is required");
          Rat delta = Rat::parse(o->delta);
          TripleExp t = propose_triple_exp(make_tuple(*o),
                                           Rat::parse(o->n_exp), delta);
          out += "case=" + case_name(t.case_used) + "\n";
          for (int i = 0; i < 3; ++i)
            out += "e" + std::to_string(i + 1) + "=" + t.e[i].str() + "\n";
          out += render_check(check_constraints_exp(t.e, Rat::parse(o->n_exp),
                                                    Rat::parse(o->eps), delta,
                                                    pick_set(*o)));
        } else {
          if (o->x <= 0 || o->n <= 0)
            throw domain_error("--x and --n are required in integer mode");
          GlobalParams p = make_params(*o);
          TripleInt t = propose_triple_int(factorize(o->d), o->n, p);
          out += "case=" + case_name(t.case_used) + "\n";
          for (int i = 0; i < 3; ++i)
            out += "d" + std::to_string(i + 1) + "=" +
                   std::to_string(t.d[i]) + "\n";
          out += render_check(
              check_constraints_int(t.d, o->n, p, pick_set(*o)));
        }
        ctx.text(out);
      };
    });
  }

  // triple-oracle
  {
    auto* sub = app.add_subcommand(
        "triple-oracle", "brute-force feasibility of a three-way split");
    sub->fallthrough();
    auto o = std::make_shared<TripleOpts>();
    add_triple_opts(sub, o);
    sub->callback([&, o, make_tuple, make_params, pick_set] {
      action = [&, o, make_tuple, make_params, pick_set] {
        std::string out;
        if (o->mode == "exponent") {
          if (o->n_exp.empty()) throw domain_error("--n-exp is required");
          auto r = oracle_feasible_exp(make_tuple(*o), Rat::parse(o->n_exp),
                                       Rat::parse(o->eps),
                                       Rat::parse(o->delta), pick_set(*o));
          out += std::string("feasible=") + (r ? "yes" : "no") + "\n";
          if (r)
            for (int i = 0; i < 3; ++i)
              out += "e" + std::to_string(i + 1) + "=" + r->e[i].str() + "\n";
        } else {
          if (o->x <= 0 || o->n <= 0)
            throw domain_error("--x and --n are required in integer mode");
          GlobalParams p = make_params(*o);
          auto r = oracle_feasible_int(o->d, o->n, p, pick_set(*o));
          out += std::string("feasible=") + (r ? "yes" : "no") + "\n";
          if (r)
            for (int i = 0; i < 3; ++i)
              out += "d" + std::to_string(i + 1) + "=" +
                     std::to_string(r->d[i]) + "\n";
        }
        ctx.text(out);
      };
    });
  }

  // extremal
  {
    auto* sub = app.add_subcommand(
        "extremal", "the boundary configuration above the design level");
    sub->fallthrough();
    auto dp = std::make_shared<std::string>("1/100");
    sub->add_option("--delta-prime", *dp, "level excess, rational");
    sub->callback([&, dp] {
      action = [&, dp] {
        ExtremalReport rep = extremal_witness(Rat::parse(*dp));
        std::string out = "d_exp=" + rep.d_exp.str() + "\n";
        for (size_t i = 0; i < rep.tuple.nu.size(); ++i)
          out += "nu" + std::to_string(i + 1) + "=" + rep.tuple.nu[i].str() +
                 "\n";
        out += "mass=" + rep.tuple.mass.str() + "\n";
        out += std::string("member=") + (rep.member ? "yes" : "no") + "\n";
        out += std::string("feasible=") + (rep.feasible ? "yes" : "no") + "\n";
        ctx.text(out);
      };
    });
  }

  // weil-scan
  {
    auto* sub = app.add_subcommand(
        "weil-scan", "exhaustive Kloosterman bound scan up to a modulus");
    sub->fallthrough();
    auto qmax = std::make_shared<long long>(500);
    sub->add_option("--qmax", *qmax, "largest modulus");
    sub->callback([&, qmax] {
      action = [&, qmax] {
        WeilReport rep = weil_check(*qmax, ctx.workers);
        std::string out =
            "q_limit=" + std::to_string(rep.q_limit) + "\n" +
            "pairs_checked=" + std::to_string(rep.pairs_checked) + "\n" +
            "violations=" + std::to_string(rep.violations) + "\n" +
            "max_ratio=" + fmt_double(rep.max_ratio) + "\n" +
            "max_ratio_at=q:" + std::to_string(rep.max_ratio_q) + ",a:" +
            std::to_string(rep.max_ratio_a) + ",b:" +
            std::to_string(rep.max_ratio_b) + "\n";
        ctx.text(out);
      };
    });
  }

  // kloosterman
  {
    auto* sub = app.add_subcommand("kloosterman",
                                   "evaluate one Kloosterman sum");
    sub->fallthrough();
    auto a = std::make_shared<long long>(0);
    auto b = std::make_shared<long long>(0);
    auto q = std::make_shared<long long>(0);
    sub->add_option("--a", *a, "first argument")->required();
    sub->add_option("--b", *b, "second argument")->required();
    sub->add_option("--q", *q, "modulus")->required();
    sub->callback([&, a, b, q] {
      action = [&, a, b, q] {
        KloostermanValue v = kloosterman(*a, *b, *q);
        std::string out = "value=" + fmt_double(v.value) + "\n" +
                          "imag_residual=" + fmt_double(v.imag_residual) +
                          "\n";
        if (((*a % *q) + *q) % *q == 0)
          out += "ramanujan=" + std::to_string(ramanujan(*q, *b)) + "\n";
        ctx.text(out);
      };
    });
  }

  // poisson-check
  {
    auto* sub = app.add_subcommand(
        "poisson-check", "both sides of the completion formula");
    sub->fallthrough();
    auto M = std::make_shared<long long>(0);
    auto q = std::make_shared<long long>(0);
    auto a = std::make_shared<long long>(1);
    auto H = std::make_shared<long long>(0);
    sub->add_option("--m", *M, "smooth-sum scale M")->required();
    sub->add_option("--q", *q, "modulus")->required();
    sub->add_option("--a", *a, "residue");
    sub->add_option("--h-terms", *H, "frequency cutoff, 0 = 100 q/M + 100");
    sub->callback([&, M, q, a, H] {
      action = [&, M, q, a, H] {
        long long h = *H > 0 ? *H : 100 * *q / std::max<long long>(*M, 1) +
                                         100;
        ResidualReport rep = poisson_check(*M, *q, *a, h);
        ctx.text("lhs=" + fmt_double(rep.lhs) + "\nrhs=" +
                 fmt_double(rep.rhs) + "\nresidual=" +
                 fmt_double(rep.residual) + "\nh_terms=" + std::to_string(h) +
                 "\n");
      };
    });
  }

  // bv-table
  {
    auto* sub = app.add_subcommand(
        "bv-table", "per-modulus worst-residue prime discrepancies");
    sub->fallthrough();
    auto x = std::make_shared<long long>(0);
    auto qmax = std::make_shared<long long>(0);
    sub->add_option("--x", *x, "count primes below x")->required();
    sub->add_option("--qmax", *qmax,
                    "largest modulus, 0 = x^(1/2)/(log x)^3");
    sub->callback([&, x, qmax] {
      action = [&, x, qmax] {
        long long qm = *qmax;
        if (qm <= 0) {
          double lx = std::log((double)*x);
          qm = std::max<long long>(
              1, (long long)(std::sqrt((double)*x) / (lx * lx * lx)));
        }
        ctx.emit(bv_table(*x, qm, ctx.workers));
      };
    });
  }

  // weighted-discrepancy
  {
    auto* sub = app.add_subcommand(
        "weighted-discrepancy",
        "sieve-weighted prime discrepancy across moduli");
    sub->fallthrough();
    auto level = std::make_shared<std::string>();
    auto limit = std::make_shared<long long>(0);
    auto x = std::make_shared<long long>(0);
    auto a = std::make_shared<long long>(1);
    sub->add_option("--level", *level, "sieve level D, rational")->required();
    sub->add_option("--limit", *limit, "weight support limit")->required();
    sub->add_option("--x", *x, "count primes below x")->required();
    sub->add_option("--a", *a, "residue");
    sub->callback([&, level, limit, x, a] {
      action = [&, level, limit, x, a] {
        WeightSequence seq = lambda_plus_sequence(Rat::parse(*level), *limit);
        ctx.emit(weighted_prime_discrepancy(seq, *x, *a));
      };
    });
  }

  // delta-q
  {
    auto* sub = app.add_subcommand(
        "delta-q", "bilinear discrepancy of two finite sequences");
    sub->fallthrough();
    auto q = std::make_shared<long long>(0);
    auto a = std::make_shared<long long>(1);
    auto N = std::make_shared<long long>(0);
    auto M = std::make_shared<long long>(0);
    auto alpha = std::make_shared<std::string>("ones");
    auto beta = std::make_shared<std::string>("ones");
    sub->add_option("--q", *q, "modulus")->required();
    sub->add_option("--a", *a, "residue");
    sub->add_option("--n", *N, "alpha lives on (N, 2N]")->required();
    sub->add_option("--m", *M, "beta lives on (M, 2M]")->required();
    sub->add_option("--alpha", *alpha, "ones, mu, or pm-random");
    sub->add_option("--beta", *beta, "ones, mu, or pm-random");
    sub->callback([&, q, a, N, M, alpha, beta] {
      action = [&, q, a, N, M, alpha, beta] {
        Rat v = delta_q(*q, *a, *N, rat_family(*alpha, *N, ctx.seed), *M,
                        rat_family(*beta, *M, ctx.seed + 1));
        ctx.text("delta=" + v.str() + "\nfloat=" + fmt_double(v.to_double()) +
                 "\n");
      };
    });
  }

  // fundamental-check
  {
    auto* sub = app.add_subcommand(
        "fundamental-check", "rough-number equidistribution in a progression");
    sub->fallthrough();
    auto q = std::make_shared<long long>(0);
    auto b = std::make_shared<long long>(1);
    auto t = std::make_shared<long long>(0);
    auto z = std::make_shared<long long>(7);
    sub->add_option("--q", *q, "modulus")->required();
    sub->add_option("--b", *b, "residue, coprime to q");
    sub->add_option("--t", *t, "count n <= t")->required();
    sub->add_option("--z", *z, "roughness cutoff: P^-(n) >= z");
    sub->callback([&, q, b, t, z] {
      action = [&, q, b, t, z] {
        FundamentalCheck rep = fundamental_lemma_check(*q, *b, *t, *z);
        ctx.text("lhs=" + std::to_string(rep.lhs) + "\ntotal=" +
                 std::to_string(rep.total) + "\nrhs=" + rep.rhs.str() +
                 "\ndeviation=" + fmt_double(rep.deviation) +
                 "\nnormalized=" + fmt_double(rep.normalized) + "\n");
      };
    });
  }

  // double-divisor
  {
    auto* sub = app.add_subcommand(
        "double-divisor", "smoothed double-divisor discrepancy");
    sub->fallthrough();
    auto q = std::make_shared<long long>(0);
    auto a = std::make_shared<long long>(1);
    auto M = std::make_shared<long long>(0);
    auto N1 = std::make_shared<long long>(0);
    auto N2 = std::make_shared<long long>(0);
    auto alpha = std::make_shared<std::string>("ones");
    auto xs = std::make_shared<double>(0);
    auto eps = std::make_shared<double>(0);
    sub->add_option("--q", *q, "modulus")->required();
    sub->add_option("--a", *a, "residue, coprime to q");
    sub->add_option("--m", *M, "alpha lives on (M, 2M]")->required();
    sub->add_option("--n1", *N1, "first smooth scale")->required();
    sub->add_option("--n2", *N2, "second smooth scale")->required();
    sub->add_option("--alpha", *alpha, "ones, mu, or pm-random");
    sub->add_option("--x-scale", *xs, "reference x for x/(q x^eps)");
    sub->add_option("--eps", *eps, "reference epsilon");
    sub->callback([&, q, a, M, N1, N2, alpha, xs, eps] {
      action = [&, q, a, M, N1, N2, alpha, xs, eps] {
        KReport rep = double_divisor_experiment(
            *q, *a, *M, *N1, *N2, dbl_family(*alpha, *M, ctx.seed), *xs,
            *eps);
        ctx.text("value=" + fmt_double(rep.value) + "\nreference=" +
                 fmt_double(rep.reference) + "\n");
      };
    });
  }

  // sw-probe
  {
    auto* sub = app.add_subcommand(
        "sw-probe", "small-moduli equidistribution probe for a sequence");
    sub->fallthrough();
    auto N = std::make_shared<long long>(0);
    auto d = std::make_shared<long long>(1);
    auto q = std::make_shared<long long>(0);
    auto a = std::make_shared<long long>(1);
    auto alpha = std::make_shared<std::string>("mu");
    auto A = std::make_shared<double>(2);
    sub->add_option("--n", *N, "alpha lives on (N, 2N]")->required();
    sub->add_option("--d", *d, "coprimality modulus d");
    sub->add_option("--q", *q, "progression modulus")->required();
    sub->add_option("--a", *a, "residue, coprime to q");
    sub->add_option("--alpha", *alpha, "ones, mu, or pm-random");
    sub->add_option("--big-a", *A, "envelope exponent A");
    sub->callback([&, N, d, q, a, alpha, A] {
      action = [&, N, d, q, a, alpha, A] {
        SWProbe rep = siegel_walfisz_probe(rat_family(*alpha, *N, ctx.seed),
                                           *N, *d, *q, *a, *A);
        ctx.text("deviation=" + rep.deviation.str() + "\nfloat=" +
                 fmt_double(rep.deviation.to_double()) + "\nenvelope=" +
                 fmt_double(rep.envelope) + "\n");
      };
    });
  }
}

// Later occurrences of a single-value flag override earlier ones, so flags
// from --config can be overridden on the command line.
void allow_overrides(CLI::App* a) {
  for (CLI::Option* opt : a->get_options())
    if (opt->get_expected_min() == 1 && opt->get_expected_max() == 1)
      opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (CLI::App* sub : a->get_subcommands([](const CLI::App*) { return true; }))
    allow_overrides(sub);
}

RunConfig capture_config(const CLI::App& app) {
  RunConfig cfg;
  auto grab = [&cfg](const CLI::App* a) {
    for (const CLI::Option* opt : a->get_options()) {
      if (opt->count() == 0) continue;
      std::string name = opt->get_lnames().empty() ? "" : opt->get_lnames()[0];
      if (name.empty() || name == "help" || name == "config" ||
          name == "save-config")
        continue;
      for (const std::string& r : opt->results()) cfg.kv.push_back({name, r});
    }
  };
  grab(&app);
  for (const CLI::App* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    grab(sub);
  }
  return cfg;
}

}  // namespace

std::string RunConfig::serialize() const {
  std::string out = "command=" + command + "\n";
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

RunConfig RunConfig::parse_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw domain_error("config: expected key=value, got \"" + line + "\"");
    std::string k = trim(line.substr(0, eq));
    std::string v = trim(line.substr(eq + 1));
    if (k == "command")
      cfg.command = v;
    else
      cfg.kv.push_back({k, v});
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw resource_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str());
}

void RunConfig::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw resource_error("cannot open config file: " + path);
  f << serialize();
  if (!f) throw resource_error("write failed: " + path);
}

std::vector<std::string> RunConfig::to_args() const {
  std::vector<std::string> args;
  if (!command.empty()) args.push_back(command);
  for (const auto& [k, v] : kv) {
    args.push_back("--" + k);
    args.push_back(v);
  }
  return args;
}

int run(const std::vector<std::string>& args) {
  // --config is resolved before the real parse: the file supplies the command
  // and its flags, and any remaining command-line flags override them.
  std::vector<std::string> argv_s;
  std::string config_path, save_path;
  try {
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); ++i) {
      auto eat = [&](const std::string& flag, std::string& into) {
        if (args[i] == flag) {
          if (i + 1 >= args.size())
            throw domain_error(flag + " needs a file argument");
          into = args[++i];
          return true;
        }
        if (args[i].rfind(flag + "=", 0) == 0) {
          into = args[i].substr(flag.size() + 1);
          return true;
        }
        return false;
      };
      if (eat("--config", config_path) || eat("--save-config", save_path))
        continue;
      rest.push_back(args[i]);
    }
    if (!config_path.empty())
      argv_s = RunConfig::load(config_path).to_args();
    argv_s.insert(argv_s.end(), rest.begin(), rest.end());
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"sievelab: sieve-theoretic equidistribution laboratory"};
  Ctx ctx;
  if (const char* env = std::getenv("SIEVELAB_WORKERS")) {
    ctx.workers = std::atoi(env);
    if (ctx.workers < 0) ctx.workers = 0;
  }
  std::function<void()> action;
  build_app(app, ctx, action);
  allow_overrides(&app);

  std::vector<const char*> argv;
  argv.push_back("sievelab");
  for (const std::string& s : argv_s) argv.push_back(s.c_str());
  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 64;
  }

  try {
    if (!save_path.empty()) capture_config(app).save(save_path);
    if (action) action();
    return 0;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const invariant_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
  return run(args);
}

}  // namespace sievelab
