#include "isotori/spectra.hpp"

#include <future>
#include <set>
#include <stdexcept>

namespace isotori {

Int mu0(const Int& n) {
  if (n < 1) throw std::invalid_argument("mu0: argument must be positive");
  Int rest = n;
  Int out = 1;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    Int power = 1;
    while (rest % p == 0) {
      rest /= p;
      power *= p;
    }
    out *= (power / p) * (p + 1);
  }
  if (rest > 1) out *= rest + 1;
  return out;
}

Rat hecke_threshold(const GramForm& q) {
  if (q.dimension() % 2 != 0)
    throw std::domain_error("hecke_threshold: dimension is odd; double the form first");
  const Int k = q.dimension() / 2;
  Rat t(mu0(level(q)) * k, 6);
  t.canonicalize();
  return t + 2;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Isospectral: return "Isospectral";
    case Verdict::NotIsospectral: return "NotIsospectral";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::optional<Rat> first_discrepancy(const RepSpectrum& a, const RepSpectrum& b,
                                     const Rat& up_to) {
  std::set<Rat> keys;
  for (const auto& [t, c] : a.counts)
    if (t <= up_to) keys.insert(t);
  for (const auto& [t, c] : b.counts)
    if (t <= up_to) keys.insert(t);
  for (const Rat& t : keys)
    if (a.at(t) != b.at(t)) return t;
  return std::nullopt;
}

namespace {

std::vector<RepSpectrum> spectra_of(const std::vector<GramForm>& forms, const Rat& bound,
                                    unsigned jobs) {
  std::vector<RepSpectrum> out;
  if (jobs <= 1) {
    for (const auto& f : forms) out.push_back(rep_spectrum(f, bound));
    return out;
  }
  std::vector<std::future<RepSpectrum>> futures;
  for (const auto& f : forms)
    futures.push_back(std::async(std::launch::async, [&f, &bound] { return rep_spectrum(f, bound); }));
  for (auto& fu : futures) out.push_back(fu.get());
  return out;
}

std::optional<Rat> earliest_discrepancy(const std::vector<RepSpectrum>& spectra, const Rat& up_to) {
  std::optional<Rat> first;
  for (std::size_t i = 1; i < spectra.size(); ++i) {
    const auto d = first_discrepancy(spectra.front(), spectra[i], up_to);
    if (d && (!first || *d < *first)) first = d;
  }
  return first;
}

}  // namespace

IsoCertificate certify(std::span<const GramForm> forms, const CertifyOptions& options) {
  if (forms.size() < 2) throw std::invalid_argument("certify: need at least two forms");
  for (const auto& f : forms) {
    if (f.dimension() != forms.front().dimension())
      throw DimensionError("certify: forms have different dimensions");
    if (!is_integral(f.matrix())) throw IntegralityError("certify: form has non-integer entries");
  }

  IsoCertificate cert;
  std::vector<GramForm> work(forms.begin(), forms.end());

  bool all_even = true;
  for (const auto& f : work) all_even = all_even && is_even(f);
  if (!all_even) {
    for (auto& f : work) f = double_form(f);
    cert.doubled = true;
    cert.notes.push_back("forms are not all even; comparing 2Q, whose values are twice those of Q");
  }

  std::optional<Rat> raw_discrepancy;
  if (work.front().dimension() % 2 != 0) {
    const auto raw = spectra_of(work, options.fallback_cap, options.jobs);
    raw_discrepancy = earliest_discrepancy(raw, options.fallback_cap);
    for (auto& f : work) f = direct_sum(f, f);
    cert.squared = true;
    cert.notes.push_back(
        "odd dimension; comparing Q + Q, whose theta series is the square of that of Q; plain "
        "spectra also compared up to " + to_string(options.fallback_cap));
  }

  for (const auto& f : work) {
    cert.dets.push_back(determinant(f.matrix()));
    cert.levels.push_back(level(f));
  }
  cert.det = cert.dets.front();

  for (const Rat& d : cert.dets) {
    if (d != cert.det) {
      cert.verdict = Verdict::NotIsospectral;
      cert.notes.push_back(
          "determinants differ; isospectral lattices have equal covolume (asymptotic count of "
          "lattice points), so the spectra differ");
      return cert;
    }
  }

  if (raw_discrepancy) {
    cert.verdict = Verdict::NotIsospectral;
    cert.first_discrepancy = raw_discrepancy;
    cert.compared_up_to = options.fallback_cap;
    cert.notes.push_back("plain spectra differ at t = " + to_string(*raw_discrepancy));
    return cert;
  }

  bool same_level = true;
  for (const auto& l : cert.levels) same_level = same_level && *l == *cert.levels.front();
  if (!same_level) {
    cert.compared_up_to = options.fallback_cap;
    cert.compared_spectra = spectra_of(work, options.fallback_cap, options.jobs);
    cert.first_discrepancy = earliest_discrepancy(cert.compared_spectra, options.fallback_cap);
    cert.verdict = cert.first_discrepancy ? Verdict::NotIsospectral : Verdict::Inconclusive;
    cert.notes.push_back("levels differ; the finiteness theorem does not apply, scanned up to " +
                         to_string(options.fallback_cap));
    return cert;
  }
  cert.level = cert.levels.front();
  cert.threshold = hecke_threshold(work.front());

  Rat bound = *cert.threshold;
  bool partial = false;
  if (options.max_t) {
    bound = *options.max_t;
    partial = bound < *cert.threshold;
  }
  cert.compared_up_to = bound;
  cert.compared_spectra = spectra_of(work, bound, options.jobs);
  cert.first_discrepancy = earliest_discrepancy(cert.compared_spectra, bound);

  if (cert.first_discrepancy) {
    cert.verdict = Verdict::NotIsospectral;
  } else if (partial) {
    cert.verdict = Verdict::Inconclusive;
    cert.notes.push_back("spectra agree up to " + to_string(bound) +
                         " only; the threshold " + to_string(*cert.threshold) + " was not reached");
  } else {
    cert.verdict = Verdict::Isospectral;
  }
  return cert;
}

}  // namespace isotori
