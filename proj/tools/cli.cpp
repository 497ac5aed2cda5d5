#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <CLI11.hpp>

#include "dnt/fusion.hpp"
#include "dnt/invariants.hpp"
#include "dnt/measures.hpp"
#include "dnt/openworld.hpp"
#include "evidence.hpp"

namespace dnt::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::string fixed6(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "a|a,b" -> {a}, {a,b}
std::vector<SubsetMask> parse_sets(const Frame& frame, const std::string& literal) {
  std::vector<SubsetMask> out;
  for (const auto& part : split(literal, '|')) {
    if (part.empty()) throw ParseError("--sets", "empty set literal in '" + literal + "'");
    SubsetMask s;
    for (const auto& label : split(part, ',')) {
      try {
        s = s | SubsetMask(1u << frame.index_of(label));
      } catch (const Error& e) {
        throw ParseError("--sets", e.what());
      }
    }
    out.push_back(s);
  }
  return out;
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::ComplexityBudget:
      return kExitBudget;
    case Errc::DuplicateLabel:
    case Errc::EmptyFrame:
    case Errc::FrameTooLarge:
    case Errc::UnknownLabel:
    case Errc::InvalidMask:
    case Errc::InvalidRelation:
    case Errc::NonDisjointPair:
    case Errc::DuplicatePair:
    case Errc::AxiomViolation:
    case Errc::EmptySetMass:
    case Errc::MassOutOfRange:
    case Errc::TotalExceedsOne:
    case Errc::DuplicateFocalSet:
    case Errc::FewerThanTwoInputs:
    case Errc::ParameterOutOfRange:
      return kExitInvalidInput;
    default:
      return kExitDomainError;
  }
}

void print_masses(std::ostream& out, const DNumber& d) {
  std::size_t width = 0;
  for (const auto& f : d.focal()) width = std::max(width, d.frame().format(f.set).size());
  for (const auto& f : d.focal()) {
    const std::string name = d.frame().format(f.set);
    out << name << std::string(width - name.size() + 2, ' ') << fixed6(f.mass) << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, std::ostream& out) {
  const auto doc = load_evidence(file);
  const auto report = validate_axioms(doc.u);
  out << "frame " << doc.frame.format(doc.frame.full()) << " (" << doc.frame.size() << " elements)\n";
  const char* source = doc.u.relation() ? "relation" : "explicit pairs";
  out << "nonexclusivity: " << source << "; axioms";
  for (const auto& r : report.results) out << ' ' << r.axiom << (r.passed ? " ok" : " FAILED");
  out << '\n';
  for (const auto& d : doc.dnumbers) {
    out << d.name << ": Q=" << fixed6(q_value(d.value)) << ' '
        << (is_information_complete(d.value) ? "complete" : "incomplete") << '\n';
  }
  if (!report.all_passed()) throw AxiomViolationError(report, doc.frame);
  out << "valid\n";
  return kExitOk;
}

struct CombineArgs {
  std::string file;
  std::string rule = "ecr";
  std::string inputs;
  std::optional<double> delta;
  bool json = false;
};

int cmd_combine(const CombineArgs& a, std::ostream& out) {
  const auto doc = load_evidence(a.file);
  const auto names = split(a.inputs, ',');
  std::vector<DNumber> ds;
  for (const auto& n : names) ds.push_back(doc.find(n));
  if (ds.size() < 2) throw Error(Errc::FewerThanTwoInputs, "combine needs at least two inputs");

  std::optional<FusionReport> report;
  if (a.rule == "dempster") {
    std::vector<Bpa> bpas;
    for (const auto& d : ds) bpas.push_back(to_bpa(d));
    report = dempster_combine_all(bpas);
  } else {
    const bool complete = std::all_of(ds.begin(), ds.end(), [](const DNumber& d) { return is_information_complete(d); });
    const auto delta = a.delta ? a.delta : doc.delta;
    if (complete) {
      report = ds.size() == 2 ? ecr_combine(ds[0], ds[1], doc.u) : ecr_combine_n(ds, doc.u);
    } else if (!delta) {
      throw ParseError("--delta", "an input is information-incomplete; supply the completeness degree with --delta");
    } else {
      const auto cd = CompletenessDegree::make(*delta);
      report = ds.size() == 2 ? combine_incomplete(ds[0], ds[1], cd, doc.u) : combine_incomplete_n(ds, cd, doc.u);
    }
  }

  const DNumber& r = report->result;
  if (a.json) {
    ojson j;
    j["rule"] = std::string(rule_name(report->rule));
    j["inputs"] = names;
    j["frame"] = r.frame().labels();
    auto masses = ojson::array();
    for (const auto& f : r.focal()) masses.push_back({{"set", labels_json(r.frame(), f.set)}, {"mass", round12(f.mass)}});
    j["masses"] = std::move(masses);
    j["conflict"] = round12(report->conflict);
    auto qs = ojson::array();
    for (double q : report->input_q) qs.push_back(round12(q));
    j["q"] = std::move(qs);
    if (const auto& ow = report->open_world) {
      ojson o;
      o["delta"] = round12(ow->delta);
      if (ow->decomposition) {
        o["k1"] = round12(ow->decomposition->k1);
        o["k2"] = round12(ow->decomposition->k2);
      }
      o["dx"] = round12(ow->dx);
      j["open_world"] = std::move(o);
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "rule " << rule_name(report->rule) << " on " << a.inputs << '\n';
  print_masses(out, r);
  out << (report->rule == Rule::Dempster ? "K=" : "K_D=") << fixed6(report->conflict) << '\n';
  if (const auto& ow = report->open_world) {
    out << "delta=" << fixed6(ow->delta) << '\n';
    if (ow->decomposition) {
      out << "K_D^1=" << fixed6(ow->decomposition->k1) << '\n';
      out << "K_D^2=" << fixed6(ow->decomposition->k2) << '\n';
    }
    out << "D(X)=" << fixed6(ow->dx) << '\n';
  }
  return kExitOk;
}

int cmd_measures(const std::string& file, const std::string& name, const std::string& sets, std::ostream& out) {
  const auto doc = load_evidence(file);
  const DNumber& d = doc.find(name);
  const auto targets = sets.empty() ? enumerate_nonempty_subsets(doc.frame) : parse_sets(doc.frame, sets);
  std::size_t width = 3;
  for (auto s : targets) width = std::max(width, doc.frame.format(s).size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  out << pad("set") << "Bel       Pl        width\n";
  for (auto s : targets) {
    const auto iv = belief_interval(d, doc.u, s);
    out << pad(doc.frame.format(s)) << fixed6(iv.lower) << "  " << fixed6(iv.upper) << "  " << fixed6(iv.width())
        << '\n';
  }
  return kExitOk;
}

int cmd_rank(const std::string& file, std::ostream& out) {
  const auto doc = load_evidence(file);
  const auto dr = determinant_and_rank(doc.u);
  char det[48];
  std::snprintf(det, sizeof det, "%.6g", dr.determinant == 0.0 ? 0.0 : dr.determinant);
  out << "dimension " << dr.dimension << '\n';
  out << "determinant " << det << '\n';
  out << "rank " << dr.rank << (dr.full_rank() ? " (full rank)" : " (rank deficient)") << '\n';
  out << "elimination " << (dr.exact ? "exact" : "floating") << '\n';
  return kExitOk;
}

int cmd_transform(const std::string& file, const std::string& name, std::optional<double> delta, std::ostream& out) {
  const auto doc = load_evidence(file);
  const DNumber& d = doc.find(name);
  if (!delta) delta = doc.delta;
  if (!delta) throw ParseError("--delta", "supply the completeness degree with --delta");
  const DNumber t = transform_complete(d, CompletenessDegree::make(*delta));
  const auto ext = extend_u(doc.u);
  out << to_json(t.frame(), ext, {NamedDNumber{name, t}}).dump(2) << '\n';
  return kExitOk;
}

int cmd_check(const std::string& file, std::size_t trials, std::uint64_t seed, std::ostream& out) {
  std::vector<checks::Outcome> outcomes;
  if (!file.empty()) {
    const auto doc = load_evidence(file);
    checks::Outcome axioms{"document axioms P1-P5", validate_axioms(doc.u).all_passed(), 1, ""};
    outcomes.push_back(axioms);
    checks::Outcome duality{"document Bel(A) + Pl(not A) = 1", true, 0, ""};
    for (const auto& d : doc.dnumbers) {
      if (!is_information_complete(d.value)) continue;
      for (std::uint32_t a = 0; a <= doc.frame.full().bits; ++a) {
        ++duality.cases;
        const double v = belief(d.value, doc.u, SubsetMask(a)) +
                         plausibility(d.value, doc.u, complement(doc.frame, SubsetMask(a)));
        if (std::abs(v - 1.0) > 1e-12 && duality.passed) {
          duality.passed = false;
          duality.detail = d.name + " on " + doc.frame.format(SubsetMask(a));
        }
      }
    }
    outcomes.push_back(duality);
  }
  for (auto& o : checks::run_all(seed, trials)) outcomes.push_back(std::move(o));
  bool all = true;
  for (const auto& o : outcomes) {
    all = all && o.passed;
    out << (o.passed ? "PASS " : "FAIL ") << o.name << " [" << o.cases << " cases]";
    if (!o.detail.empty()) out << " " << o.detail;
    out << '\n';
  }
  return all ? kExitOk : kExitChecksFailed;
}

int cmd_dx_curve(double q1, double q2, double k1, std::size_t steps, std::ostream& out) {
  if (steps < 1) throw Error(Errc::ParameterOutOfRange, "--delta-steps must be at least 1");
  dx_closed_form(q1, q2, 1.0, k1);  // validates the parameters once
  out << "delta     D(X)      1-K_D     D1(X)     D2(X)     property4 property5\n";
  for (std::size_t i = 0; i <= steps; ++i) {
    const double delta = static_cast<double>(i) / static_cast<double>(steps);
    const double d1x = (1.0 - delta) * (1.0 - q1);
    const double d2x = (1.0 - delta) * (1.0 - q2);
    const double omk = 1.0 - k1 - k2_closed_form(q1, q2, delta);
    out << fixed6(delta) << "  ";
    if (omk <= kTotalConflictTolerance) {
      out << "undefined (total conflict)\n";
      continue;
    }
    const auto rep = dx_region_classify(d1x, d2x, std::clamp(omk, 0.0, 1.0), delta);
    auto tags = [](const std::vector<RegionCase>& cs) {
      std::string s;
      for (const auto& c : cs) s += (s.empty() ? "" : ",") + std::string(c.tag) + (c.numeric_agrees ? "" : "!");
      return s.empty() ? std::string("-") : s;
    };
    out << fixed6(rep.dx) << "  " << fixed6(omk) << "  " << fixed6(d1x) << "  " << fixed6(d2x) << "  "
        << tags(rep.property4) << ' ' << tags(rep.property5) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"D number theory: combination, measures and open-world diagnostics", "dnt"};
  app.require_subcommand(1);

  std::string file;
  auto* validate = app.add_subcommand("validate", "check axioms of U and every D number");
  validate->add_option("file", file, "evidence document")->required();

  CombineArgs ca;
  double delta_value = 0.0;
  auto* combine = app.add_subcommand("combine", "combine D numbers with the ECR rule or Dempster's rule");
  combine->add_option("file", ca.file, "evidence document")->required();
  combine->add_option("--rule", ca.rule, "ecr or dempster")->check(CLI::IsMember({"ecr", "dempster"}));
  combine->add_option("--inputs", ca.inputs, "comma-separated D number names")->required();
  auto* combine_delta = combine->add_option("--delta", delta_value, "completeness degree in [0,1]");
  combine->add_flag("--json", ca.json, "machine-readable output");

  std::string name, sets;
  auto* measures = app.add_subcommand("measures", "Bel, Pl and interval width");
  measures->add_option("file", file, "evidence document")->required();
  measures->add_option("--dnumber", name, "D number name")->required();
  measures->add_option("--sets", sets, "sets such as \"a|a,b\"; default all nonempty subsets");

  auto* rank = app.add_subcommand("rank", "determinant and rank of U");
  rank->add_option("file", file, "evidence document")->required();

  auto* transform = app.add_subcommand("transform", "move missing mass onto the extended frame");
  transform->add_option("file", file, "evidence document")->required();
  transform->add_option("--dnumber", name, "D number name")->required();
  auto* transform_delta = transform->add_option("--delta", delta_value, "completeness degree in [0,1]");

  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check", "run the invariant suite");
  check->add_option("file", file, "optional evidence document");
  check->add_option("--trials", trials, "superadditivity trials per family size");
  check->add_option("--seed", seed, "suite seed");

  double q1 = 0.0, q2 = 0.0, k1 = 0.0;
  std::size_t steps = 20;
  auto* curve = app.add_subcommand("dx-curve", "D(X) over a delta grid with region tags");
  curve->add_option("--q1", q1, "Q of the first D number")->required();
  curve->add_option("--q2", q2, "Q of the second D number")->required();
  curve->add_option("--k1", k1, "base-frame conflict K_D^1")->required();
  curve->add_option("--delta-steps", steps, "grid intervals on [0,1]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*validate) return cmd_validate(file, out);
    if (*combine) {
      if (*combine_delta) ca.delta = delta_value;
      return cmd_combine(ca, out);
    }
    if (*measures) return cmd_measures(file, name, sets, out);
    if (*rank) return cmd_rank(file, out);
    if (*transform) {
      return cmd_transform(file, name, *transform_delta ? std::optional<double>(delta_value) : std::nullopt, out);
    }
    if (*check) return cmd_check(file, trials, seed, out);
    if (*curve) return cmd_dx_curve(q1, q2, k1, steps, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return kExitInvalidInput;
}

}  // namespace dnt::cli
