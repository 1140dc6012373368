#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ssekit/factor.hpp"
#include "ssekit/intmat.hpp"

namespace ssekit {

using Json = nlohmann::ordered_json;

/// Text form: "ROWS COLS" then ROWS lines of COLS base-10 integers.
IntMatrix parse_matrix_text(std::string_view text);
std::string format_matrix_text(const IntMatrix& m);

/// JSON form {"rows":N,"cols":M,"data":[[...],...]}. Entries are emitted as
/// JSON integers up to 2^53-1 in magnitude and as decimal strings beyond.
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

/// Integer as a JSON number when exactly representable in a double, else a string.
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);
Json vector_to_json(const IntVector& v);

/// Accepts either form; a leading '{' selects JSON.
IntMatrix parse_matrix(std::string_view text);

/// {"matrices":[M0,...,Mn],"steps":[{"C":...,"D":...},...]}. Parsing
/// verifies every step.
Json chain_to_json(const SseChain& chain);
SseChain chain_from_json(const Json& j);
SseChain parse_chain(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace ssekit
