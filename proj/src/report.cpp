#include "isotori/report.hpp"

#include <ostream>
#include <sstream>

namespace isotori {

namespace {

template <class M>
Json matrix_json(const M& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const RatVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

bool fits_one_line(const Json& arr) {
  for (const auto& e : arr) {
    if (!is_scalar(e)) return false;
    if (e.is_string() && e.get<std::string>().find(' ') != std::string::npos) return false;
  }
  return true;
}

bool is_matrix(const Json& arr) {
  if (arr.empty()) return false;
  for (const auto& e : arr)
    if (!e.is_array() || !fits_one_line(e)) return false;
  return true;
}

std::string join(const Json& arr) {
  std::string out;
  for (const auto& e : arr) {
    if (!out.empty()) out += ' ';
    out += scalar_text(e);
  }
  return out;
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, int indent);

void render_object(std::ostringstream& out, const Json& obj, int indent) {
  for (const auto& [key, value] : obj.items()) render_value(out, key, value, indent);
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_scalar(v)) {
    out << pad << key << ": " << scalar_text(v) << '\n';
  } else if (v.is_object()) {
    out << pad << key << ":\n";
    render_object(out, v, indent + 2);
  } else if (v.empty() || fits_one_line(v)) {
    out << pad << key << ":" << (v.empty() ? "" : " ") << join(v) << '\n';
  } else if (is_matrix(v)) {
    out << pad << key << ":\n";
    for (const auto& row : v) out << pad << "  " << join(row) << '\n';
  } else {
    out << pad << key << ":\n";
    for (const auto& e : v) {
      if (e.is_object()) {
        out << pad << "  -\n";
        render_object(out, e, indent + 4);
      } else if (e.is_array()) {
        out << pad << "  - " << join(e) << '\n';
      } else {
        out << pad << "  - " << scalar_text(e) << '\n';
      }
    }
  }
}

}  // namespace

Json to_json(const RatMatrix& m) { return matrix_json(m); }
Json to_json(const IntMatrix& m) { return matrix_json(m); }

Json to_json(const RepSpectrum& s) {
  Json counts = Json::array();
  for (const auto& [t, c] : s.counts) counts.push_back(Json::array({to_string(t), c}));
  return Json{{"bound", to_string(s.bound)}, {"step", to_string(s.step)}, {"counts", counts}};
}

Json to_json(const IsoCertificate& c) {
  Json dets = Json::array();
  for (const auto& d : c.dets) dets.push_back(to_string(d));
  Json levels = Json::array();
  for (const auto& l : c.levels) levels.push_back(l ? Json(to_string(*l)) : Json());
  return Json{
      {"verdict", to_string(c.verdict)},
      {"det", to_string(c.det)},
      {"level", c.level ? Json(to_string(*c.level)) : Json()},
      {"threshold", c.threshold ? Json(to_string(*c.threshold)) : Json()},
      {"compared_up_to", to_string(c.compared_up_to)},
      {"first_discrepancy", c.first_discrepancy ? Json(to_string(*c.first_discrepancy)) : Json()},
      {"doubled", c.doubled},
      {"squared", c.squared},
      {"dets", dets},
      {"levels", levels},
      {"notes", c.notes},
  };
}

Json to_json(const EquivalenceWitness& w) {
  const SearchStats& s = w.stats;
  Json caps = Json::array();
  for (const auto& cap : s.norm_caps) caps.push_back(to_string(cap));
  Json order = Json::array();
  for (auto col : s.column_order) order.push_back(col);
  return Json{
      {"outcome", w.equivalent() ? "Equivalent" : "NotEquivalent"},
      {"transform", w.transform ? to_json(*w.transform) : Json()},
      {"stats",
       Json{
           {"determinant_gate", s.determinant_gate},
           {"reduced", s.reduced},
           {"lambda_bound", to_string(s.lambda_bound)},
           {"norm_caps", caps},
           {"candidate_counts", s.candidate_counts},
           {"column_order", order},
           {"nodes_visited", s.nodes_visited},
           {"automorphism_pruning", s.automorphism_pruning},
       }},
  };
}

Json to_json(const Decomposition& d) {
  Json components = Json::array();
  for (const auto& c : d.components) {
    Json gens = Json::array();
    for (const auto& g : c.generators) gens.push_back(vector_json(g));
    components.push_back(Json{{"dimension", c.dimension}, {"basis", to_json(c.basis)}, {"generators", gens}});
  }
  const auto& cert = d.certificate;
  Json cross = Json::array();
  for (const auto& row : cert.cross_products) cross.push_back(row);
  return Json{
      {"irreducible", d.components.size() == 1},
      {"component_count", d.components.size()},
      {"components", components},
      {"certificate",
       Json{
           {"norm_cutoff", to_string(cert.norm_cutoff)},
           {"vectors_enumerated", cert.vectors_enumerated},
           {"indecomposable", cert.indecomposable},
           {"cross_products", cross},
           {"orthogonal", cert.orthogonal},
           {"dimensions_sum", cert.dimensions_sum},
           {"generates", cert.generates},
       }},
  };
}

Json to_json(const LinearCode& c) {
  Json gens = Json::array();
  for (Eigen::Index r = 0; r < c.generators().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < c.generators().cols(); ++j) row.push_back(c.generators()(r, j));
    gens.push_back(std::move(row));
  }
  return Json{{"q", c.modulus()}, {"n", c.length()}, {"size", to_string(c.size())}, {"generators", gens}};
}

Json to_json(const WeightDistribution& d) {
  Json rows = Json::array();
  for (const auto& [sig, count] : d) {
    Json row(sig);
    row.push_back(count);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_text(const Json& doc) {
  std::ostringstream out;
  if (doc.is_object()) {
    render_object(out, doc, 0);
  } else if (doc.is_array() && is_matrix(doc)) {
    for (const auto& row : doc) out << join(row) << '\n';
  } else {
    out << scalar_text(doc) << '\n';
  }
  return out.str();
}

std::string render(const Json& doc, bool json) { return json ? doc.dump(2) + "\n" : render_text(doc); }

void write_spectrum_tsv(std::ostream& out, const RepSpectrum& s) {
  for (const auto& [t, c] : s.counts) out << to_string(t) << '\t' << c << '\n';
}

}  // namespace isotori
