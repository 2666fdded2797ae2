#include "isotori/search.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "code_kernel.hpp"
#include "isotori/matrix_io.hpp"
#include "isotori/report.hpp"

namespace isotori {

namespace {

struct ClassRecord {
  LinearCode code;
  WeightDistribution distribution;
};

struct Bucket {
  WeightDistribution distribution;
  std::vector<std::size_t> members;
};

std::string serialize(const WeightDistribution& d) {
  std::string out;
  for (const auto& [sig, count] : d) {
    for (int v : sig) out += std::to_string(v) + ',';
    out += ':' + std::to_string(count) + ';';
  }
  return out;
}

// Hash on the serialized distribution, then exact comparison within a hash
// slot.
std::vector<Bucket> bucket_classes(const std::vector<ClassRecord>& classes) {
  std::unordered_map<std::size_t, std::vector<std::size_t>> slots;
  std::vector<Bucket> buckets;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const WeightDistribution& d = classes[i].distribution;
    auto& slot = slots[std::hash<std::string>{}(serialize(d))];
    auto it = std::find_if(slot.begin(), slot.end(),
                           [&](std::size_t b) { return buckets[b].distribution == d; });
    if (it == slot.end()) {
      slot.push_back(buckets.size());
      buckets.push_back(Bucket{d, {i}});
    } else {
      buckets[*it].members.push_back(i);
    }
  }
  return buckets;
}

GramForm lifted_form(const LinearCode& c) { return gram(lift(c)); }

Int level_key(const GramForm& f) { return level(is_even(f) ? f : double_form(f)); }

// One code per isometry class of the lifts, in input order.
std::vector<LinearCode> isometry_representatives(const std::vector<LinearCode>& codes, unsigned jobs) {
  std::vector<LinearCode> reps;
  std::vector<GramForm> rep_forms;
  EquivalenceOptions options;
  options.jobs = jobs;
  for (const LinearCode& c : codes) {
    const GramForm f = lifted_form(c);
    const bool known = std::any_of(rep_forms.begin(), rep_forms.end(), [&](const GramForm& r) {
      return integral_equivalence(r, f, options).equivalent();
    });
    if (known) continue;
    reps.push_back(c);
    rep_forms.push_back(f);
  }
  return reps;
}

SearchResult finish(std::vector<ClassRecord> classes, std::size_t min_tuple, unsigned jobs) {
  std::sort(classes.begin(), classes.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.code < b.code; });
  SearchResult result;
  result.classes = classes.size();
  for (const Bucket& b : bucket_classes(classes)) {
    if (b.members.size() < 2) continue;
    Collision collision{b.distribution, {}};
    for (std::size_t m : b.members) collision.codes.push_back(classes[m].code);
    if (collision.codes.size() >= min_tuple) {
      std::map<Int, std::vector<LinearCode>> by_level;
      for (const LinearCode& c : isometry_representatives(collision.codes, jobs))
        by_level[level_key(lifted_form(c))].push_back(c);
      for (const auto& [lvl, group] : by_level)
        if (group.size() >= min_tuple) result.tuples.push_back(verify_tuple(group, jobs));
    }
    result.collisions.push_back(std::move(collision));
  }
  std::sort(result.collisions.begin(), result.collisions.end(),
            [](const Collision& a, const Collision& b) { return a.codes.front() < b.codes.front(); });
  std::sort(result.tuples.begin(), result.tuples.end(),
            [](const CollisionTuple& a, const CollisionTuple& b) { return a.codes.front() < b.codes.front(); });
  return result;
}

CodeMatrix to_matrix(const detail::SmallCode& s) {
  CodeMatrix m(s.k, s.n);
  for (int r = 0; r < s.k; ++r)
    for (int j = 0; j < s.n; ++j) m(r, j) = s.at(r, j);
  return m;
}

// Marks the monomial orbit of a reduced echelon code and returns its least
// member.
class OrbitExpander {
 public:
  OrbitExpander(const CodeSpace& space, std::vector<bool>& visited)
      : space_(space), field_(space.modulus()), visited_(visited) {
    const int n = space.length();
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do perms_.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    const unsigned masks = (space.modulus() == 2 || n == 0) ? 1u : (1u << (n - 1));
    for (unsigned mask = 0; mask < masks; ++mask) {
      std::vector<int> s(static_cast<std::size_t>(n), 1);
      for (int j = 1; j < n; ++j) s[static_cast<std::size_t>(j)] = (mask >> (j - 1)) & 1u ? -1 : 1;
      signs_.push_back(std::move(s));
    }
  }

  detail::SmallCode expand(const detail::SmallCode& source) {
    detail::SmallCode best = source;
    detail::SmallCode image;
    for (const auto& perm : perms_)
      for (const auto& s : signs_) {
        detail::apply_signed_permutation(source, perm.data(), s.data(), field_.p, image);
        detail::rref(image, field_);
        visited_[space_.rank(image.entries())] = true;
        if (image < best) best = image;
      }
    return best;
  }

 private:
  const CodeSpace& space_;
  detail::FieldTables field_;
  std::vector<bool>& visited_;
  std::vector<std::vector<int>> perms_;
  std::vector<std::vector<int>> signs_;
};

constexpr const char* kCheckpointTag = "isotori-search-checkpoint";

std::string family_name(CodeFamily f) { return f == CodeFamily::All ? "all" : "systematic"; }

void save_checkpoint(const SearchOptions& o, std::uint64_t next, const std::vector<detail::SmallCode>& reps) {
  std::ofstream out(o.checkpoint);
  if (!out) throw std::runtime_error("cannot write checkpoint " + o.checkpoint.string());
  out << kCheckpointTag << '\n'
      << o.q << ' ' << o.n << ' ' << o.k << ' ' << family_name(o.family) << '\n'
      << "next " << next << '\n'
      << "classes " << reps.size() << '\n';
  for (const auto& r : reps) {
    const auto e = r.entries();
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << int(e[i]);
    out << '\n';
  }
}

std::uint64_t load_checkpoint(const SearchOptions& o, std::vector<detail::SmallCode>& reps) {
  std::ifstream in(o.checkpoint);
  std::string tag, family, word;
  int q = 0, n = 0, k = 0;
  std::uint64_t next = 0, count = 0;
  if (!(in >> tag) || tag != kCheckpointTag) throw FormatError("not a search checkpoint: " + o.checkpoint.string());
  in >> q >> n >> k >> family >> word >> next;
  if (!in || word != "next") throw FormatError("malformed checkpoint header");
  if (q != o.q || n != o.n || k != o.k || family != family_name(o.family))
    throw std::invalid_argument("checkpoint was written for different search parameters");
  if (!(in >> word >> count) || word != "classes") throw FormatError("malformed checkpoint header");
  for (std::uint64_t c = 0; c < count; ++c) {
    detail::SmallCode s;
    s.k = k;
    s.n = n;
    for (auto& e : s.entries()) {
      int v = -1;
      if (!(in >> v) || v < 0 || v >= q) throw FormatError("malformed checkpoint entry");
      e = static_cast<std::uint8_t>(v);
    }
    reps.push_back(s);
  }
  return next;
}

}  // namespace

SearchResult run_search(const SearchOptions& o) {
  if (o.min_tuple < 2) throw std::invalid_argument("run_search: min_tuple must be at least 2");
  if (o.n > 8) throw std::invalid_argument("run_search: length above 8 exceeds the enumeration caps");
  const CodeSpace space(o.q, o.n, o.k, CodeFamily::All);
  if (space.size() > (std::uint64_t{1} << 32))
    throw std::invalid_argument("run_search: " + std::to_string(space.size()) + " codes exceed the enumeration caps");
  const std::uint64_t family_end = o.family == CodeFamily::Systematic ? space.pattern_size(0) : space.size();

  // Checkpoint blocks: one per pivot pattern and leading free entry.
  std::vector<std::uint64_t> blocks;
  for (std::size_t p = 0; p < space.pattern_count() && space.pattern_offset(p) < family_end; ++p) {
    const std::uint64_t size = space.pattern_size(p);
    const std::uint64_t step = space.free_count(p) > 0 ? size / static_cast<std::uint64_t>(o.q) : size;
    for (std::uint64_t b = 0; b < size; b += step) blocks.push_back(space.pattern_offset(p) + b);
  }
  blocks.push_back(family_end);

  std::vector<bool> visited(space.size(), false);
  OrbitExpander expander(space, visited);
  std::vector<detail::SmallCode> reps;
  std::uint64_t start = 0;
  if (o.resume && std::filesystem::exists(o.checkpoint)) {
    start = load_checkpoint(o, reps);
    for (const auto& r : reps) expander.expand(r);
  }

  std::uint64_t processed = 0;
  detail::SmallCode code;
  code.k = o.k;
  code.n = o.n;
  for (std::size_t b = 0; b + 1 < blocks.size(); ++b) {
    if (blocks[b + 1] <= start) continue;
    if (o.max_codes != 0 && processed >= o.max_codes) {
      save_checkpoint(o, blocks[b], reps);
      throw PartialResultError("search stopped after " + std::to_string(processed) +
                                   " codes; checkpoint written to " + o.checkpoint.string(),
                               o.checkpoint);
    }
    for (std::uint64_t idx = std::max(blocks[b], start); idx < blocks[b + 1]; ++idx) {
      ++processed;
      if (visited[idx]) continue;
      space.unrank(idx, code.entries());
      reps.push_back(expander.expand(code));
    }
  }

  std::vector<ClassRecord> classes;
  for (const auto& r : reps) {
    LinearCode c = LinearCode::generated_by(o.q, to_matrix(r));
    WeightDistribution d = weight_distribution(c);
    classes.push_back(ClassRecord{std::move(c), std::move(d)});
  }
  SearchResult result = finish(std::move(classes), o.min_tuple, o.jobs);
  result.codes_examined = family_end;
  return result;
}

SearchResult search_family(std::span<const LinearCode> family, std::size_t min_tuple, unsigned jobs) {
  if (min_tuple < 2) throw std::invalid_argument("search_family: min_tuple must be at least 2");
  std::vector<ClassRecord> classes;
  std::set<LinearCode> seen;
  for (const LinearCode& c : family) {
    if (c.modulus() != family.front().modulus() || c.length() != family.front().length())
      throw std::invalid_argument("search_family: codes have different modulus or length");
    LinearCode canonical = canonical_monomial_form(c);
    if (!seen.insert(canonical).second) continue;
    WeightDistribution d = weight_distribution(canonical);
    classes.push_back(ClassRecord{std::move(canonical), std::move(d)});
  }
  SearchResult result = finish(std::move(classes), min_tuple, jobs);
  result.codes_examined = family.size();
  return result;
}

CollisionTuple verify_tuple(std::span<const LinearCode> codes, unsigned jobs) {
  if (codes.size() < 2) throw VerificationError("parameters", "a tuple needs at least two codes");
  for (const LinearCode& c : codes)
    if (c.modulus() != codes[0].modulus() || c.length() != codes[0].length())
      throw VerificationError("parameters", "codes have different modulus or length");
  auto label = [](std::size_t i) { return std::to_string(i + 1); };

  if (codes[0].length() <= 8) {
    std::vector<LinearCode> canonical;
    for (const LinearCode& c : codes) canonical.push_back(canonical_monomial_form(c));
    for (std::size_t i = 0; i < codes.size(); ++i)
      for (std::size_t j = i + 1; j < codes.size(); ++j)
        if (canonical[i] == canonical[j])
          throw VerificationError("canonical forms",
                                  "codes " + label(i) + " and " + label(j) + " are monomially equivalent");
  }

  const WeightDistribution reference = weight_distribution(codes[0]);
  for (std::size_t i = 1; i < codes.size(); ++i)
    if (weight_distribution(codes[i]) != reference)
      throw VerificationError("weight distribution",
                              "code " + label(i) + " differs from code 1");

  CollisionTuple tuple;
  tuple.codes.assign(codes.begin(), codes.end());
  std::vector<GramForm> forms;
  for (std::size_t i = 0; i < codes.size(); ++i) {
    Lattice l = lift(codes[i]);
    if (!(project(l, codes[i].modulus()) == codes[i]))
      throw VerificationError("lift", "code " + label(i) + " does not survive the lift round trip");
    forms.push_back(gram(l));
    tuple.lattices.push_back(std::move(l));
  }

  CertifyOptions certify_options;
  certify_options.jobs = jobs;
  tuple.certificate = certify(forms, certify_options);
  if (tuple.certificate.verdict != Verdict::Isospectral)
    throw VerificationError("isospectrality", "certificate verdict is " + to_string(tuple.certificate.verdict));

  EquivalenceOptions options;
  options.jobs = jobs;
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      PairOutcome p{i, j, integral_equivalence(forms[i], forms[j], options)};
      if (p.witness.equivalent())
        throw VerificationError("isometry", "lattices " + label(i) + " and " + label(j) + " are isometric");
      tuple.pairwise.push_back(std::move(p));
    }
  return tuple;
}

void write_results(const SearchResult& result, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto open = [](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
  };
  auto tuple_name = [](std::size_t i) {
    std::ostringstream s;
    s << "tuple_" << std::setw(4) << std::setfill('0') << i + 1;
    return s.str();
  };

  {
    std::ofstream manifest = open(dir / "manifest.txt");
    manifest << "codes_examined " << result.codes_examined << '\n'
             << "classes " << result.classes << '\n'
             << "collisions " << result.collisions.size() << '\n'
             << "tuples " << result.tuples.size() << '\n';
    for (std::size_t t = 0; t < result.tuples.size(); ++t)
      manifest << tuple_name(t) << ' ' << result.tuples[t].codes.size() << '\n';
  }
  {
    std::ofstream out = open(dir / "collisions.txt");
    for (std::size_t c = 0; c < result.collisions.size(); ++c) {
      out << "# collision " << c + 1 << ", " << result.collisions[c].codes.size() << " classes\n";
      for (const LinearCode& code : result.collisions[c].codes) write_code(out, code);
    }
  }
  for (std::size_t t = 0; t < result.tuples.size(); ++t) {
    const CollisionTuple& tuple = result.tuples[t];
    const fs::path sub = dir / tuple_name(t);
    fs::create_directories(sub);
    for (std::size_t i = 0; i < tuple.codes.size(); ++i) {
      const std::string suffix = "_" + std::to_string(i + 1) + ".txt";
      std::ofstream code_out = open(sub / ("code" + suffix));
      write_code(code_out, tuple.codes[i]);
      std::ofstream lattice_out = open(sub / ("lattice" + suffix));
      write_matrix(lattice_out, tuple.lattices[i].basis());
      std::ofstream gram_out = open(sub / ("gram" + suffix));
      write_matrix(gram_out, gram(tuple.lattices[i]).matrix());
    }
    open(sub / "certificate.txt") << render(to_json(tuple.certificate), false);
    open(sub / "certificate.json") << render(to_json(tuple.certificate), true);
    for (const PairOutcome& p : tuple.pairwise)
      open(sub / ("isometry_" + std::to_string(p.first + 1) + "_" + std::to_string(p.second + 1) + ".txt"))
          << render(to_json(p.witness), false);
  }
}

}  // namespace isotori
