#include "ssekit/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "ssekit/errors.hpp"

namespace ssekit {

namespace {

const Integer kJsonSafeMax = (Integer(1) << 53) - 1;

Integer parse_integer_token(const std::string& tok) {
  std::size_t start = (tok.size() > 1 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
  if (start == tok.size() || tok.find_first_not_of("0123456789", start) != std::string::npos)
    throw ParseError("not a base-10 integer: '" + tok + "'");
  Integer x;
  if (x.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10) != 0)
    throw ParseError("not a base-10 integer: '" + tok + "'");
  return x;
}

std::size_t parse_dimension(const std::string& tok) {
  Integer x = parse_integer_token(tok);
  if (x < 1 || x > 1'000'000) throw ParseError("matrix dimension out of range: " + tok);
  return x.get_ui();
}

}  // namespace

IntMatrix parse_matrix_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty matrix input");
  std::istringstream header(line);
  std::string r, c, extra;
  if (!(header >> r >> c) || (header >> extra))
    throw ParseError("first line must be 'ROWS COLS'");
  const std::size_t rows = parse_dimension(r);
  const std::size_t cols = parse_dimension(c);

  std::vector<Integer> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw ParseError("expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    std::istringstream row(line);
    std::string tok;
    std::size_t count = 0;
    while (row >> tok) {
      data.push_back(parse_integer_token(tok));
      ++count;
    }
    if (count != cols)
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(count) +
                       " entries, expected " + std::to_string(cols));
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("trailing content after " + std::to_string(rows) + " rows");
  return IntMatrix(rows, cols, std::move(data));
}

std::string format_matrix_text(const IntMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m(i, j).get_str();
    }
    out += '\n';
  }
  return out;
}

Json integer_to_json(const Integer& x) {
  if (abs(x) <= kJsonSafeMax) return Json(static_cast<std::int64_t>(x.get_si()));
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer_token(j.get<std::string>());
  throw ParseError("matrix entry must be a JSON integer or decimal string, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(integer_to_json(x));
  return arr;
}

Json matrix_to_json(const IntMatrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) data.push_back(vector_to_json(m.row(i)));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ParseError("matrix JSON needs \"rows\", \"cols\" and \"data\"");
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
    throw ParseError("matrix JSON dimensions must be integers");
  const auto rows = j["rows"].get<std::int64_t>();
  const auto cols = j["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive");
  const Json& data = j["data"];
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows)
    throw ParseError("\"data\" must hold " + std::to_string(rows) + " rows");
  std::vector<Integer> entries;
  for (const auto& row : data) {
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != cols)
      throw ParseError("every row of \"data\" must hold " + std::to_string(cols) + " entries");
    for (const auto& x : row) entries.push_back(integer_from_json(x));
  }
  return IntMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(entries));
}

static Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

IntMatrix parse_matrix(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ParseError("empty matrix input");
  if (text[first] == '{') return matrix_from_json(parse_json(text));
  return parse_matrix_text(text.substr(first));
}

Json chain_to_json(const SseChain& chain) {
  Json matrices = Json::array();
  for (const auto& m : chain.matrices()) matrices.push_back(matrix_to_json(m));
  Json steps = Json::array();
  for (const auto& s : chain.steps())
    steps.push_back(Json{{"C", matrix_to_json(s.C())}, {"D", matrix_to_json(s.D())}});
  return Json{{"matrices", std::move(matrices)}, {"steps", std::move(steps)}};
}

SseChain chain_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_array() ||
      !j.contains("steps") || !j["steps"].is_array())
    throw ParseError("chain JSON needs \"matrices\" and \"steps\" arrays");
  std::vector<IntMatrix> matrices;
  for (const auto& m : j["matrices"]) matrices.push_back(matrix_from_json(m));
  if (matrices.empty()) throw ParseError("chain needs at least one matrix");
  std::vector<ElementaryEquiv> steps;
  for (std::size_t k = 0; k < j["steps"].size(); ++k) {
    const Json& s = j["steps"][k];
    if (!s.is_object() || !s.contains("C") || !s.contains("D"))
      throw ParseError("chain step " + std::to_string(k + 1) + " needs \"C\" and \"D\"");
    if (k + 1 >= matrices.size())
      throw VerificationError("chain has more steps than matrix links");
    steps.push_back(ElementaryEquiv::verify(matrix_from_json(s["C"]), matrix_from_json(s["D"]),
                                            matrices[k], matrices[k + 1]));
  }
  return SseChain(std::move(matrices), std::move(steps));
}

SseChain parse_chain(std::string_view text) { return chain_from_json(parse_json(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ssekit
