#pragma once

// Report documents for certificates, witnesses, decompositions and codes.
// Each report is built once as an ordered JSON document; the text form is a
// rendering of the same document, so both carry identical content.  All
// numbers are exact: rationals appear as "a/b" strings.

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "isotori/codes.hpp"
#include "isotori/decomposition.hpp"
#include "isotori/enumeration.hpp"
#include "isotori/isometry.hpp"
#include "isotori/spectra.hpp"

namespace isotori {

using Json = nlohmann::ordered_json;

Json to_json(const RatMatrix& m);
Json to_json(const IntMatrix& m);
Json to_json(const RepSpectrum& s);
Json to_json(const IsoCertificate& c);
Json to_json(const EquivalenceWitness& w);
Json to_json(const Decomposition& d);
Json to_json(const LinearCode& c);
Json to_json(const WeightDistribution& d);

/// Indented "key: value" lines; scalar arrays on one line, matrices one row
/// per line.
std::string render_text(const Json& doc);
/// Pretty JSON (two-space indent) or render_text, newline-terminated.
std::string render(const Json& doc, bool json);

/// "t<TAB>count" lines, ascending t.
void write_spectrum_tsv(std::ostream& out, const RepSpectrum& s);

}  // namespace isotori
