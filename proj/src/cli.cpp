#include "isotori/cli.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include <CLI11.hpp>

#include "isotori/corpus.hpp"
#include "isotori/decomposition.hpp"
#include "isotori/enumeration.hpp"
#include "isotori/isometry.hpp"
#include "isotori/matrix_io.hpp"
#include "isotori/report.hpp"
#include "isotori/search.hpp"
#include "isotori/spectra.hpp"

namespace isotori {

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  unsigned jobs = 1;
};

Rat rational_option(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const FormatError&) {
    throw std::invalid_argument("--" + name + ": expected an integer or a/b, got '" + text + "'");
  }
}

GramForm read_form(const std::string& path, bool basis) {
  const RatMatrix m = read_matrix_file(path);
  return basis ? gram(Lattice(m)) : GramForm(m);
}

Lattice read_lattice(const std::string& path) { return Lattice(read_matrix_file(path)); }

void emit_matrix(const Context& ctx, const RatMatrix& m) {
  if (ctx.json)
    ctx.out << render(to_json(m), true);
  else
    write_matrix(ctx.out, m);
}

// Same vectors up to sign, in any order.
bool same_up_to_sign(const std::vector<RatVector>& got, const std::vector<IntVector>& want) {
  if (got.size() != want.size()) return false;
  std::vector<std::string> a, b;
  auto key = [](const RatVector& v) {
    const RatVector c = canonical_sign(v);
    std::string s;
    for (Eigen::Index i = 0; i < c.size(); ++i) s += to_string(c(i)) + ' ';
    return s;
  };
  for (const auto& v : got) a.push_back(key(v));
  for (const auto& v : want) b.push_back(key(to_rat(v)));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

const char* status(bool pass) { return pass ? "PASS" : "FAIL"; }

int paper_triplet(const Context& ctx, const std::optional<Rat>& max_t, bool negative) {
  std::array<IntMatrix, 3> bases{corpus::basis(1), corpus::basis(2), corpus::basis(3)};
  if (negative) bases[1](3, 0) = 1;
  std::vector<Lattice> lattices;
  std::vector<GramForm> forms;
  Json printed = Json::array();
  for (int i = 0; i < 3; ++i) {
    lattices.emplace_back(to_rat(bases[static_cast<std::size_t>(i)]));
    forms.push_back(gram(lattices.back()));
    printed.push_back(forms.back().matrix() == to_rat(corpus::gram_matrix(i + 1)));
  }

  // Isospectrality: certificate plus the tabulated values of 2Q_i.
  CertifyOptions certify_options;
  certify_options.max_t = max_t;
  certify_options.jobs = ctx.jobs;
  const IsoCertificate cert = certify(forms, certify_options);
  const Rat table_bound = max_t ? std::min(*max_t, Rat(92)) : Rat(92);
  std::size_t checked = 0, matching = 0;
  for (const GramForm& f : forms) {
    const RepSpectrum s = rep_spectrum(double_form(f), table_bound, ctx.jobs);
    for (const auto& [t, r] : corpus::doubled_table()) {
      if (Rat(t) > table_bound) break;
      ++checked;
      matching += s.at(t) == r;
    }
  }
  const bool tables_ok = checked == matching;
  std::string iso_status = status(cert.verdict == Verdict::Isospectral && tables_ok);
  if (cert.verdict == Verdict::Inconclusive && tables_ok && !cert.first_discrepancy) iso_status = "INCONCLUSIVE";
  Json iso{
      {"verdict", to_string(cert.verdict)},
      {"det_2Q", to_string(cert.det)},
      {"level_2Q", cert.level ? Json(to_string(*cert.level)) : Json()},
      {"mu0", cert.level ? Json(to_string(mu0(*cert.level))) : Json()},
      {"threshold", cert.threshold ? Json(to_string(*cert.threshold)) : Json()},
      {"compared_up_to", to_string(cert.compared_up_to)},
      {"first_discrepancy", cert.first_discrepancy ? Json(to_string(*cert.first_discrepancy)) : Json()},
      {"table_values_checked", checked},
      {"table_values_matching", matching},
      {"notes", cert.notes},
  };

  // Non-isometry: exhaustive searches, plus the caps under the quoted bound.
  EquivalenceOptions options;
  options.jobs = ctx.jobs;
  bool all_distinct = true;
  Json pairs = Json::array();
  for (auto [a, b] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const EquivalenceWitness w = integral_equivalence(forms[static_cast<std::size_t>(a)],
                                                      forms[static_cast<std::size_t>(b)], options);
    all_distinct = all_distinct && !w.equivalent();
    pairs.push_back(Json{{"pair", std::to_string(a + 1) + "-" + std::to_string(b + 1)},
                         {"outcome", w.equivalent() ? "Equivalent" : "NotEquivalent"},
                         {"nodes_visited", w.stats.nodes_visited}});
  }
  EquivalenceOptions quoted;
  quoted.lambda_bound = corpus::quoted_lambda();
  quoted.reduce = false;
  quoted.jobs = ctx.jobs;
  const EquivalenceWitness unreduced = integral_equivalence(forms[0], forms[1], quoted);
  const bool caps_ok = unreduced.stats.norm_caps == corpus::quoted_caps();
  Json caps = Json::array();
  for (const auto& c : unreduced.stats.norm_caps) caps.push_back(to_string(c));
  Json noniso{
      {"pairs", pairs},
      {"quoted_lambda", to_string(corpus::quoted_lambda())},
      {"caps_1_2", caps},
      {"caps_match", caps_ok},
      {"unreduced_outcome_1_2", unreduced.equivalent() ? "Equivalent" : "NotEquivalent"},
  };
  const bool noniso_ok = all_distinct && caps_ok && !unreduced.equivalent();

  // Irreducibility: decomposition certificates and the ladder of L_1.
  bool irreducible = true;
  Json components = Json::array();
  for (const Lattice& l : lattices) {
    const Decomposition d = decompose(l);
    irreducible = irreducible && d.components.size() == 1;
    components.push_back(d.components.size());
  }
  const auto ladder = independent_ladder(lattices[0], 6);
  const auto expected = corpus::ladder();
  bool ladder_ok = ladder.size() == expected.size();
  Json norms = Json::array();
  for (std::size_t s = 0; s < ladder.size(); ++s) {
    norms.push_back(to_string(ladder[s].norm));
    ladder_ok = ladder_ok && s < expected.size() && ladder[s].norm == expected[s].norm &&
                same_up_to_sign(ladder[s].vectors, expected[s].vectors);
  }
  Json irr{
      {"components", components},
      {"ladder_norms", norms},
      {"ladder_matches", ladder_ok},
      {"quoted_stage5_in_lattice", contains(lattices[0], to_rat(corpus::quoted_stage5_vector()))},
  };
  const bool irr_ok = irreducible && ladder_ok;

  // Codes: L_i = lift(L_i mod 5) and equal weight distributions.
  bool round_trip = true;
  Json sizes = Json::array();
  std::vector<LinearCode> codes;
  for (const Lattice& l : lattices) {
    codes.push_back(project(l, 5));
    const LinearCode& c = codes.back();
    sizes.push_back(to_string(c.size()));
    round_trip = round_trip && c.size() == 125 && same_lattice(lift(c), l) &&
               Rat(determinant(l)) * Rat(c.size()) == Rat(15625);
  }
  const bool equal_dist = equal_weight_dist(codes[0], codes[1]) && equal_weight_dist(codes[0], codes[2]);
  const bool codes_ok = round_trip && equal_dist;
  Json code_details{{"sizes", sizes}, {"round_trip", round_trip}, {"equal_weight_distributions", equal_dist}};

  const std::vector<std::pair<std::string, std::string>> stages{
      {"isospectrality", iso_status},
      {"non_isometry", status(noniso_ok)},
      {"irreducibility", status(irr_ok)},
      {"codes", status(codes_ok)},
  };
  std::string failed;
  bool all_pass = true;
  for (const auto& [name, st] : stages) {
    if (st == "FAIL" && failed.empty()) failed = name;
    all_pass = all_pass && st == "PASS";
  }
  Json doc;
  for (const auto& [name, st] : stages) doc[name] = st;
  doc["result"] = all_pass ? "PASS" : (failed.empty() ? "INCONCLUSIVE" : "FAIL");
  doc["details"] = Json{
      {"perturbed", negative},
      {"gram_matches_printed", printed},
      {"isospectrality", iso},
      {"non_isometry", noniso},
      {"irreducibility", irr},
      {"codes", code_details},
  };
  ctx.out << render(doc, ctx.json);
  if (!failed.empty()) {
    ctx.err << "paper-triplet: FAIL at stage " << failed << '\n';
    return 3;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of isospectral flat tori", "isotori"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  unsigned jobs = 1;
  app.add_flag("--json", json, "Machine-readable output");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  std::vector<std::string> files;
  std::string max_text, max_t_text, fallback_text, lambda_text, family_text = "all", out_dir;
  bool basis = false, no_reduce = false, negative = false, resume = false;
  std::uint64_t node_limit = 0, max_codes = 0;
  int q = 0, n = 0, k = 0;
  std::size_t min_tuple = 2;

  auto* rep = app.add_subcommand("rep", "Representation numbers R(Q, t) as t<TAB>count");
  rep->add_option("form", files, "Gram matrix file")->required()->expected(1);
  rep->add_option("--max", max_text, "Largest t")->required();
  rep->add_flag("--basis", basis, "Input is a lattice basis");

  auto* iso = app.add_subcommand("isospec", "Isospectrality certificate for two or more forms");
  iso->add_option("forms", files, "Gram matrix files")->required()->expected(2, 64);
  iso->add_option("--max-t", max_t_text, "Compare only up to this value");
  iso->add_option("--fallback-cap", fallback_text, "Scan bound when the level gate fails");
  iso->add_flag("--basis", basis, "Inputs are lattice bases");

  auto* eq = app.add_subcommand("isometry", "Integral equivalence of two forms");
  eq->add_option("forms", files, "Gram matrix files")->required()->expected(2);
  eq->add_option("--lambda", lambda_text, "Lower bound for the smallest eigenvalue of the first form");
  eq->add_flag("--no-reduce", no_reduce, "Search the forms as given");
  eq->add_option("--node-limit", node_limit, "Abort after this many search nodes");
  eq->add_flag("--basis", basis, "Inputs are lattice bases");

  auto* dec = app.add_subcommand("decompose", "Orthogonal decomposition of a lattice");
  dec->add_option("lattice", files, "Basis file")->required()->expected(1);

  auto* dual_cmd = app.add_subcommand("dual", "Dual lattice basis");
  dual_cmd->add_option("lattice", files, "Basis file")->required()->expected(1);

  auto* lift_cmd = app.add_subcommand("lift", "Lattice basis of the lift of a code");
  lift_cmd->add_option("code", files, "Code file")->required()->expected(1);

  auto* project_cmd = app.add_subcommand("project", "Code of a lattice mod q");
  project_cmd->add_option("lattice", files, "Basis file")->required()->expected(1);
  project_cmd->add_option("--q", q, "Modulus")->required();

  auto* wd = app.add_subcommand("weightdist", "Weight distribution of a code, or equality of two");
  wd->add_option("codes", files, "Code files")->required()->expected(1, 2);

  auto* cs = app.add_subcommand("codesearch", "Search codes for isospectral non-isometric lifts");
  cs->add_option("--q", q, "Prime modulus")->required();
  cs->add_option("--n", n, "Length")->required();
  cs->add_option("--k", k, "Dimension")->required();
  cs->add_option("--family", family_text, "all or systematic")->check(CLI::IsMember({"all", "systematic"}));
  cs->add_option("--min-tuple", min_tuple, "Smallest tuple size to report");
  cs->add_option("--out", out_dir, "Results directory")->required();
  cs->add_option("--max-codes", max_codes, "Stop with a checkpoint after this many codes");
  cs->add_flag("--resume", resume, "Continue from the checkpoint in the results directory");

  auto* paper = app.add_subcommand("paper-triplet", "Re-prove the theorems for the embedded triplet");
  paper->add_option("--max-t", max_t_text, "Compare spectra only up to this value");
  paper->add_flag("--self-test-negative", negative, "Perturb A_2 and expect a failure");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const Context ctx{out, err, json, jobs};
  try {
    if (*rep) {
      const RepSpectrum s = rep_spectrum(read_form(files[0], basis), rational_option(max_text, "max"), jobs);
      if (json)
        out << render(to_json(s), true);
      else
        write_spectrum_tsv(out, s);
      return 0;
    }
    if (*iso) {
      std::vector<GramForm> forms;
      for (const auto& f : files) forms.push_back(read_form(f, basis));
      CertifyOptions options;
      options.jobs = jobs;
      if (!max_t_text.empty()) options.max_t = rational_option(max_t_text, "max-t");
      if (!fallback_text.empty()) options.fallback_cap = rational_option(fallback_text, "fallback-cap");
      const IsoCertificate cert = certify(forms, options);
      out << render(to_json(cert), json);
      return cert.verdict == Verdict::Isospectral ? 0 : 1;
    }
    if (*eq) {
      EquivalenceOptions options;
      options.jobs = jobs;
      options.reduce = !no_reduce;
      options.node_limit = node_limit;
      if (!lambda_text.empty()) options.lambda_bound = rational_option(lambda_text, "lambda");
      const EquivalenceWitness w =
          integral_equivalence(read_form(files[0], basis), read_form(files[1], basis), options);
      if (w.equivalent() && !json)
        write_matrix(out, *w.transform);
      else
        out << render(to_json(w), json);
      return w.equivalent() ? 0 : 1;
    }
    if (*dec) {
      out << render(to_json(decompose(read_lattice(files[0]))), json);
      return 0;
    }
    if (*dual_cmd) {
      emit_matrix(ctx, dual(read_lattice(files[0])).basis());
      return 0;
    }
    if (*lift_cmd) {
      emit_matrix(ctx, lift(read_code_file(files[0])).basis());
      return 0;
    }
    if (*project_cmd) {
      const LinearCode c = project(read_lattice(files[0]), q);
      if (json)
        out << render(to_json(c), true);
      else
        write_code(out, c);
      return 0;
    }
    if (*wd) {
      const LinearCode a = read_code_file(files[0]);
      if (files.size() == 1) {
        out << render(to_json(weight_distribution(a)), json);
        return 0;
      }
      const LinearCode b = read_code_file(files[1]);
      const bool equal = equal_weight_dist(a, b);
      out << render(Json{{"equal", equal},
                         {"first", to_json(weight_distribution(a))},
                         {"second", to_json(weight_distribution(b))}},
                    json);
      return equal ? 0 : 1;
    }
    if (*cs) {
      SearchOptions options;
      options.q = q;
      options.n = n;
      options.k = k;
      options.family = family_text == "systematic" ? CodeFamily::Systematic : CodeFamily::All;
      options.min_tuple = min_tuple;
      options.jobs = jobs;
      options.max_codes = max_codes;
      options.resume = resume;
      std::filesystem::create_directories(out_dir);
      options.checkpoint = std::filesystem::path(out_dir) / "search.checkpoint";
      const SearchResult result = run_search(options);
      write_results(result, out_dir);
      out << render(Json{{"codes_examined", result.codes_examined},
                         {"classes", result.classes},
                         {"collisions", result.collisions.size()},
                         {"tuples", result.tuples.size()},
                         {"out", out_dir}},
                    json);
      return 0;
    }
    if (*paper) {
      std::optional<Rat> max_t;
      if (!max_t_text.empty()) max_t = rational_option(max_t_text, "max-t");
      return paper_triplet(ctx, max_t, negative);
    }
  } catch (const PartialResultError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const VerificationError& e) {
    err << "verification failed at stage " << e.stage() << ": " << e.what() << '\n';
    return 3;
  } catch (const InternalVerificationError& e) {
    err << "internal verification failure: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal verification failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace isotori
