#pragma once

#include <json.hpp>

#include "freering/codec.hpp"
#include "freering/geometry.hpp"
#include "freering/group_ring.hpp"
#include "freering/laurent.hpp"
#include "freering/word.hpp"

namespace freering {

using Json = nlohmann::json;

/// {"num": n, "den": d}; values outside int64 are written as decimal strings.
Json to_json(const Rational& q);
/// Accepts {"num","den"} (integers or decimal strings), a bare integer, or "p/q".
Rational rational_from_json(const Json& j);

Json to_json(const Word& w);
Word word_from_json(const Json& j, int rank);

/// {"rank": n, "terms": [{"num","den","word"}]} sorted shortlex.
Json to_json(const GroupRingElem& f);
GroupRingElem group_ring_from_json(const Json& j);

/// {"nvars": k, "terms": [{"num","den","exps"}]} sorted graded-lex.
Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

/// {"m": m, "w": ...}
Json to_json(const WordCode& code);
WordCode word_code_from_json(const Json& j);

/// {"s": s, "m": m, "const": rational, "w": ...}
Json to_json(const ElementCode& code);
ElementCode element_code_from_json(const Json& j);

/// {"value": ..., "marker": ..., "base": ...}
Json to_json(const TupleCode& code);
TupleCode tuple_code_from_json(const Json& j);

/// {"vertices": n, "base": 0, "edges": [[src, dst, label]]}
Json to_json(const CoreGraph& g);

}  // namespace freering
