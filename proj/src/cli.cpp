#include "padicsa/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "padicsa/serialize.hpp"

namespace padicsa {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json config_json(const JobSpec& job, long N) {
  return json{{"prime", job.prime},   {"work_prec", job.work_prec}, {"n", job.n}, {"N", N},
              {"window", job.window}, {"digits", job.digits},       {"seed", job.seed}};
}

LangContext univariate(long p) { return LangContext{{"t"}, p}; }

JobResult run_decompose(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  Formula f = parse_formula(text, univariate(cfg.p));
  NormalizeOptions nopt;
  nopt.power = job.power;
  NormalForm nf = normalize(f, cfg, nopt);
  DecomposeOptions dopt;
  dopt.unit_level = job.n;
  CellList cl = decompose1(nf, cfg, dopt);
  TruncatedSample s(cfg, job.window, job.digits);
  PartitionReport part = check_partition(cl, nf, s);
  auto mm = equiv(f, nf, s);
  JobResult r;
  r.artifact = json{{"command", "decompose"},
                    {"input", text},
                    {"config", config_json(job, nf.N)},
                    {"normal_form", to_json(nf, {"t"})},
                    {"cells", to_json(cl, {"t"})},
                    {"verification", {{"partition", to_json(part)}, {"normalize", to_json(mm)}}}};
  r.status = part.ok() && mm.empty() ? 0 : 1;
  return r;
}

JobResult run_prepare(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  FactoredBasic theta = parse_factored(text, univariate(cfg.p));
  auto pieces = prepare_param(theta, job.n, cfg);
  TruncatedSample s(cfg, job.window, job.digits);

  std::vector<PresentedCell> cells;
  for (const auto& pc : pieces) cells.push_back(pc.cell);
  CellMatcher matcher(cells, job.window, cfg);
  std::vector<std::vector<PadicNumber>> members(pieces.size());
  PartitionReport part;
  s.for_each([&](const SamplePoint& t) {
    ++part.checked;
    PadicNumber x = t.to_padic(cfg.p);
    try {
      bool in_domain = true;
      try {
        (void)eval_theta(theta, x, cfg);
      } catch (const DomainError&) {
        in_domain = false;
      } catch (const RootExtractionError&) {
        in_domain = false;
      }
      int count = 0;
      for (std::size_t i = 0; i < pieces.size(); ++i)
        if (matcher.member(i, t)) {
          ++count;
          members[i].push_back(x);
        }
      if (count >= 2) part.overlapping.push_back(t);
      if (in_domain && count == 0) part.uncovered.push_back(t);
      if (!in_domain && count > 0) part.extraneous.push_back(t);
    } catch (const Error& e) {
      part.errors.emplace_back(t, e.what());
    }
  });

  Rng rng(job.seed);
  ResidualReport total;
  json jp = json::array();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto pts = members[i];
    auto extra = sample_cell(pieces[i].cell, job.samples_per_piece, rng, job.window, cfg);
    pts.insert(pts.end(), extra.begin(), extra.end());
    ResidualReport rep = verify_unit_residual(pieces[i], theta, pts, cfg);
    total.checked += rep.checked;
    total.failures.insert(total.failures.end(), rep.failures.begin(), rep.failures.end());
    total.errors.insert(total.errors.end(), rep.errors.begin(), rep.errors.end());
    jp.push_back(to_json(pieces[i]));
  }
  JobResult r;
  r.artifact = json{{"command", "prepare"},
                    {"input", text},
                    {"theta", theta.to_string()},
                    {"config", config_json(job, theta.e)},
                    {"pieces", jp},
                    {"verification", {{"partition", to_json(part)}, {"residuals", to_json(total)}}}};
  r.status = part.ok() && total.ok() ? 0 : 1;
  return r;
}

JobResult run_skolem(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  Formula f = parse_formula(text, univariate(cfg.p));
  NormalizeOptions nopt;
  nopt.power = job.power;
  NormalForm nf = normalize(f, cfg, nopt);
  DecomposeOptions dopt;
  dopt.unit_level = job.n;
  CellList cl = decompose1(nf, cfg, dopt);
  json out = json::array();
  std::size_t failures = 0;
  json fail_list = json::array();
  for (std::size_t i = 0; i < cl.cells.size(); ++i) {
    SectionDescriptor s = section(cl.cells[i], cfg);
    SectionReport rep = verify_section(cl.cells[i], s, cfg);
    failures += rep.failures.size();
    for (const auto& msg : rep.failures) fail_list.push_back(json{{"cell", i}, {"reason", msg}});
    out.push_back(json{{"cell", to_json(cl.cells[i])}, {"section", to_json(s)}});
  }
  JobResult r;
  r.artifact = json{{"command", "skolem"},
                    {"input", text},
                    {"config", config_json(job, nf.N)},
                    {"sections", out},
                    {"verification", {{"checked", cl.cells.size()}, {"failures", fail_list}, {"pass", failures == 0}}}};
  r.status = failures == 0 ? 0 : 1;
  return r;
}

// Random (t, z) with prescribed valuations and compares both evaluations.
json ring_agreement(const PresburgerCell& c, const std::vector<RingCondition>& rcs, const std::vector<long>* zeta_fixed,
                    long p, long window, Rng& rng, std::size_t tuples, bool& pass) {
  std::size_t agree = 0, members = 0;
  json bad = json::array();
  for (std::size_t i = 0; i < tuples; ++i) {
    std::vector<long> vt, vz;
    for (int k = 0; k < c.d; ++k) vt.push_back(rng.range(-window, window));
    for (int k = 0; k < 2 * c.d; ++k) vz.push_back(zeta_fixed ? (*zeta_fixed)[k] : rng.range(-window, window));
    std::vector<PadicNumber> t, z;
    auto unit = [&] {
      long u;
      do u = rng.range(1, p * p);
      while (u % p == 0);
      return PadicNumber::from_rational(p, u);
    };
    for (long v : vt) t.push_back(PadicNumber::uniformizer_power(p, v) * unit());
    for (long v : vz) z.push_back(PadicNumber::uniformizer_power(p, v) * unit());
    bool a = pres_member(c, vz, vt);
    bool b = eval_ring(rcs, t, z, p);
    members += a;
    if (a == b)
      ++agree;
    else if (bad.size() < 10)
      bad.push_back(json{{"x", vt}, {"zeta", vz}, {"presburger", a}, {"ring", b}});
  }
  pass = agree == tuples;
  return json{{"tuples", tuples}, {"agree", agree}, {"members", members}, {"first_disagreements", bad}, {"pass", pass}};
}

JobResult run_translate(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  Rng rng(job.seed);
  JobResult r;
  std::string trimmed = text.substr(text.find_first_not_of(" \t\r\n") == std::string::npos
                                        ? 0
                                        : text.find_first_not_of(" \t\r\n"));
  if (!trimmed.empty() && trimmed[0] == '{') {
    json in = json::parse(trimmed);
    PresburgerCell c = presburger_from_json(in.contains("cell") ? in.at("cell") : in);
    auto rcs = translate(c);
    json jr = json::array();
    for (const auto& rc : rcs) jr.push_back(to_json(rc));
    bool pass;
    json agreement = ring_agreement(c, rcs, nullptr, cfg.p, job.window, rng, 1000, pass);
    r.artifact = json{{"command", "translate"},
                      {"input", in},
                      {"config", config_json(job, 1)},
                      {"presburger", to_json(c)},
                      {"ring_conditions", jr},
                      {"verification", {{"ring_agreement", agreement}, {"pass", pass}}}};
    r.status = pass ? 0 : 1;
    return r;
  }
  Formula f = parse_formula(text, univariate(cfg.p));
  NormalizeOptions nopt;
  nopt.power = job.power;
  NormalForm nf = normalize(f, cfg, nopt);
  DecomposeOptions dopt;
  dopt.unit_level = job.n;
  CellList cl = decompose1(nf, cfg, dopt);
  TruncatedSample s(cfg, job.window, job.digits);
  json images = json::array();
  bool all_pass = true;
  for (const auto& A : cl.cells) {
    if (A.type() == 0) continue;
    ValuationImage im = image_valuation(A);
    auto rcs = translate(im.cell);
    json jr = json::array();
    for (const auto& rc : rcs) jr.push_back(to_json(rc));
    bool ring_pass;
    json agreement = ring_agreement(im.cell, rcs, &im.zeta, cfg.p, job.window, rng, 200, ring_pass);
    // sampled points of the cell have valuations in the image, and every
    // image valuation in the window is realised by c + lambda p^(w - v(lambda))
    std::size_t image_bad = 0;
    s.for_each([&](const SamplePoint& t) {
      PadicNumber x = t.to_padic(cfg.p);
      try {
        if (contains(A, x) && !pres_member(im.cell, im.zeta, {(x - A.center).valuation()})) ++image_bad;
      } catch (const InsufficientPrecision&) {
      }
    });
    for (long w = -job.window; w <= job.window; ++w) {
      if (!pres_member(im.cell, im.zeta, {w})) continue;
      PadicNumber x = A.center + A.lambda * PadicNumber::uniformizer_power(cfg.p, w - A.lambda.valuation());
      if (!contains(A, x)) ++image_bad;
    }
    bool pass = ring_pass && image_bad == 0;
    all_pass = all_pass && pass;
    images.push_back(json{{"cell", to_json(A)},
                          {"presburger", to_json(im.cell)},
                          {"zeta", im.zeta},
                          {"ring_conditions", jr},
                          {"verification", {{"ring_agreement", agreement}, {"image_mismatches", image_bad}}}});
  }
  r.artifact = json{{"command", "translate"},
                    {"input", text},
                    {"config", config_json(job, nf.N)},
                    {"images", images},
                    {"verification", {{"pass", all_pass}}}};
  r.status = all_pass ? 0 : 1;
  return r;
}

JobResult run_evpmin(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  FactoredBasic f = parse_factored(text, univariate(cfg.p));
  NormalForm dom = normalize(parse_formula(job.domain, univariate(cfg.p)), cfg);
  CellList cl = decompose1(dom, cfg);
  TruncatedSample s(cfg, job.window, job.digits);
  EvpResult res = evp_min(f, cl.cells, s);
  // rerun with more digits, as many as keep the sample near the size of the first
  int more = job.digits;
  while (more < 2 * job.digits) {
    long pk = 1;
    for (int i = 0; i <= more; ++i) pk *= cfg.p;
    if (static_cast<std::uint64_t>(2 * job.window + 1) * static_cast<std::uint64_t>(pk) > 4'000'000) break;
    ++more;
  }
  json stability;
  bool stable = true;
  if (more > job.digits) {
    PadicConfig cfg2(cfg.p, std::max(cfg.work_prec, more));
    EvpResult res2 = evp_min(f, cl.cells, TruncatedSample(cfg2, job.window, more));
    stable = res2.valuation == res.valuation;
    stability = json{{"digits", more}, {"valuation", res2.valuation}, {"stable", stable}};
  } else {
    stability = json{{"digits", job.digits}, {"valuation", res.valuation}, {"stable", true}};
  }
  JobResult r;
  r.artifact = json{{"command", "evpmin"},
                    {"input", text},
                    {"domain", job.domain},
                    {"config", config_json(job, 1)},
                    {"valuation", res.valuation},
                    {"witness", to_json(res.witness)},
                    {"points", res.points},
                    {"verification", {{"rerun", stability}, {"pass", stable}}}};
  r.status = stable ? 0 : 1;
  return r;
}

JobResult run_verify(const JobSpec& job, const std::string& text, const PadicConfig& cfg) {
  Formula f = parse_formula(text, univariate(cfg.p));
  TruncatedSample s(cfg, job.window, job.digits);
  JobResult r;
  std::vector<Mismatch> mm;
  json extra;
  if (!job.against.empty()) {
    Formula g = parse_formula(job.against, univariate(cfg.p));
    mm = equiv(f, g, s);
    extra = job.against;
  } else {
    NormalizeOptions nopt;
    nopt.power = job.power;
    NormalForm nf = normalize(f, cfg, nopt);
    mm = equiv(f, nf, s);
    extra = to_json(nf, {"t"});
  }
  r.artifact = json{{"command", "verify"},
                    {"input", text},
                    {"against", extra},
                    {"config", config_json(job, 1)},
                    {"verification", {{"equivalence", to_json(mm)}, {"sample_size", s.size()}}}};
  r.status = mm.empty() ? 0 : 1;
  return r;
}

}  // namespace

JobResult run_job(const JobSpec& job, const std::string& text) {
  try {
    PadicConfig cfg(job.prime, job.work_prec);
    if (job.n < 1) throw DomainError("--n must be at least 1");
    if (job.window < 0) throw DomainError("--window must be non-negative");
    if (job.command == "decompose") return run_decompose(job, text, cfg);
    if (job.command == "prepare") return run_prepare(job, text, cfg);
    if (job.command == "skolem") return run_skolem(job, text, cfg);
    if (job.command == "translate") return run_translate(job, text, cfg);
    if (job.command == "evpmin") return run_evpmin(job, text, cfg);
    if (job.command == "verify") return run_verify(job, text, cfg);
    throw DomainError("unknown command '" + job.command + "'");
  } catch (const Error& e) {
    JobResult r;
    r.status = 2;
    r.artifact = json{{"command", job.command},
                      {"input", text},
                      {"error", {{"kind", e.kind()}, {"message", e.what()}}},
                      {"verification", {{"pass", false}, {"reason", "not run"}}}};
    return r;
  } catch (const json::exception& e) {
    JobResult r;
    r.status = 2;
    r.artifact = json{{"command", job.command},
                      {"input", text},
                      {"error", {{"kind", "JsonError"}, {"message", e.what()}}},
                      {"verification", {{"pass", false}, {"reason", "not run"}}}};
    return r;
  }
}

int cli_main(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cell decomposition and preparation over Q_p"};
  app.require_subcommand(1);
  JobSpec job;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("text", job.input, "formula or term; '-' or omitted reads stdin");
    sub->add_option("--file", job.input_file, "read the input text from a file");
    sub->add_option("--prime", job.prime, "the prime p")->capture_default_str();
    sub->add_option("--work-prec", job.work_prec, "stored p-adic digits")->capture_default_str();
    sub->add_option("--n", job.n, "unit level n")->capture_default_str();
    sub->add_option("--power", job.power, "the common power N is a multiple of this")->capture_default_str();
    sub->add_option("--window", job.window, "oracle valuation window B")->capture_default_str();
    sub->add_option("--digits", job.digits, "oracle unit digits k")->capture_default_str();
    sub->add_option("--out", job.out, "write the JSON artifact here");
    sub->add_option("--seed", job.seed, "seed for random re-checks")->capture_default_str();
  };
  std::vector<std::pair<std::string, std::string>> cmds{
      {"decompose", "cells mod P_N^* for a formula in t"},
      {"prepare", "prepared pieces for a factored term, optionally root(e, ...)"},
      {"skolem", "a point of every cell of a formula's decomposition"},
      {"translate", "valuation images of cells, or a Presburger cell given as JSON, as ring conditions"},
      {"evpmin", "minimum norm of a factored function on a bounded domain"},
      {"verify", "oracle equivalence of a formula with its normal form or with --against"},
      {"sample", "the oracle sample as JSON lines"}};
  for (const auto& [name, help] : cmds) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    if (name == "verify") sub->add_option("--against", job.against, "second formula");
    if (name == "evpmin") sub->add_option("--domain", job.domain, "domain formula")->capture_default_str();
    if (name == "prepare")
      sub->add_option("--samples", job.samples_per_piece, "random in-cell samples per piece")->capture_default_str();
    sub->callback([&job, name = name] { job.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::ostringstream sink;
    std::ofstream file;
    std::ostream* dest = &out;
    if (!job.out.empty()) {
      file.open(job.out);
      if (!file) throw IoError("cannot open " + job.out + " for writing");
      dest = &file;
    }

    if (job.command == "sample") {
      try {
        TruncatedSample s(PadicConfig(job.prime, job.work_prec), job.window, job.digits);
        s.for_each([&](const SamplePoint& t) { *dest << to_json(t).dump() << "\n"; });
      } catch (const Error& e) {
        err << e.kind() << ": " << e.what() << "\n";
        return 2;
      }
      if (!*dest) throw IoError("write failed");
      return 0;
    }

    std::string text;
    if (!job.input_file.empty()) {
      std::ifstream f(job.input_file);
      if (!f) throw IoError("cannot read " + job.input_file);
      text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    } else if (job.input.empty() || job.input == "-") {
      text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      if (in.bad()) throw IoError("cannot read standard input");
    } else {
      text = job.input;
    }
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();

    JobResult r = run_job(job, text);
    *dest << r.artifact.dump(2) << "\n";
    if (!*dest) throw IoError("write failed");
    if (r.status == 2) err << r.artifact["error"]["kind"].get<std::string>() << ": "
                           << r.artifact["error"]["message"].get<std::string>() << "\n";
    return r.status;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace padicsa
