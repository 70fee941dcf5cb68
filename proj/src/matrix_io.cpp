#include "sft/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace sft {

namespace {

struct Token {
  std::string text;
  std::size_t line, column;
};

// Splits into tokens per nonblank, non-comment line.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::vector<Token> toks;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      if (line[i] == '#' && toks.empty())
        break;
      std::size_t s = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      toks.push_back({std::string(line.substr(s, i - s)), line_no, s + 1});
    }
    if (!toks.empty())
      lines.push_back(std::move(toks));
    if (end == text.size())
      break;
    pos = end + 1;
  }
  return lines;
}

std::size_t parse_count(const Token &t) {
  if (t.text.empty() || t.text.size() > 9 ||
      !std::all_of(t.text.begin(), t.text.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a dimension, got '" + t.text + "'", t.line,
                     t.column);
  return std::stoul(t.text);
}

Integer parse_integer(const Token &t) {
  const std::string &s = t.text;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size() ||
      !std::all_of(s.begin() + i, s.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected an integer, got '" + s + "'", t.line, t.column);
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

IntPoly parse_poly_token(const Token &t) {
  try {
    return IntPoly::parse(t.text);
  } catch (const ParseError &e) {
    throw ParseError(std::string("bad polynomial entry '") + t.text + "'",
                     t.line, t.column + (e.column() ? e.column() - 1 : 0));
  }
}

template <class T, class F>
Matrix<T> parse_matrix(std::string_view text, F entry) {
  auto lines = tokenize(text);
  if (lines.empty())
    throw ParseError("empty matrix file", 1, 1);
  const auto &hdr = lines[0];
  if (hdr.size() != 2)
    throw ParseError("header must be 'rows cols'", hdr[0].line, hdr[0].column);
  std::size_t rows = parse_count(hdr[0]), cols = parse_count(hdr[1]);
  if (lines.size() - 1 != rows) {
    std::size_t ln = lines.size() > rows + 1 ? lines[rows + 1][0].line
                                            : lines.back()[0].line + 1;
    throw ParseError("expected " + std::to_string(rows) + " rows, found " +
                         std::to_string(lines.size() - 1),
                     ln, 1);
  }
  std::vector<T> entries;
  entries.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto &row = lines[r + 1];
    if (row.size() != cols) {
      const Token &where = row.size() > cols ? row[cols] : row.back();
      throw ParseError("expected " + std::to_string(cols) + " entries, found " +
                           std::to_string(row.size()),
                       where.line,
                       row.size() > cols ? where.column
                                         : where.column + where.text.size());
    }
    for (const auto &tok : row)
      entries.push_back(entry(tok));
  }
  return Matrix<T>(rows, cols, std::move(entries));
}

template <class T> std::string format_generic(const Matrix<T> &m) {
  std::ostringstream os;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Integer integer_from_json(const nlohmann::json &v) {
  if (v.is_number_integer())
    return Integer(std::to_string(v.get<long long>()));
  if (v.is_number_unsigned())
    return Integer(std::to_string(v.get<unsigned long long>()));
  if (v.is_string()) {
    Token t{v.get<std::string>(), 0, 0};
    if (t.text.empty())
      throw ParseError("empty integer string");
    try {
      return parse_integer(t);
    } catch (const ParseError &) {
      throw ParseError("expected an integer, got '" + t.text + "'");
    }
  }
  throw ParseError("expected an integer, got " + v.dump());
}

template <class T, class F>
Matrix<T> from_json_rows(const nlohmann::json &rowsj, std::size_t rows,
                         std::size_t cols, F entry) {
  if (!rowsj.is_array() || rowsj.size() != rows)
    throw ParseError("entries must be a list of " + std::to_string(rows) +
                     " rows");
  std::vector<T> e;
  for (const auto &r : rowsj) {
    if (!r.is_array() || r.size() != cols)
      throw ParseError("each row must have " + std::to_string(cols) +
                       " entries");
    for (const auto &v : r)
      e.push_back(entry(v));
  }
  return Matrix<T>(rows, cols, std::move(e));
}

template <class T, class F>
Matrix<T> from_json_mirror(const nlohmann::json &j, F entry) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("entries"))
    throw ParseError("matrix JSON needs rows, cols and entries");
  return from_json_rows<T>(j.at("entries"), j.at("rows").get<std::size_t>(),
                           j.at("cols").get<std::size_t>(), entry);
}

IntPoly poly_from_json(const nlohmann::json &v) {
  if (v.is_string())
    return IntPoly::parse(v.get<std::string>());
  return IntPoly(integer_from_json(v));
}

} // namespace

IntMatrix parse_int_matrix(std::string_view text) {
  return parse_matrix<Integer>(text, parse_integer);
}

PolyMatrix parse_poly_matrix(std::string_view text) {
  return parse_matrix<IntPoly>(text, parse_poly_token);
}

std::string format_matrix(const IntMatrix &m) { return format_generic(m); }
std::string format_matrix(const PolyMatrix &m) { return format_generic(m); }

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

nlohmann::json parse_json_text(const std::string &text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    // byte offset -> line/column
    std::size_t off = e.byte ? e.byte - 1 : 0, line = 1, col = 1;
    for (std::size_t i = 0; i < off && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
}

IntMatrix read_int_matrix(const std::string &path) {
  std::string text = read_file(path);
  if (ends_with(path, ".json"))
    return int_matrix_from_json_any(parse_json_text(text));
  return parse_int_matrix(text);
}

PolyMatrix read_poly_matrix(const std::string &path) {
  std::string text = read_file(path);
  if (ends_with(path, ".json"))
    return poly_matrix_from_json(parse_json_text(text));
  return parse_poly_matrix(text);
}

nlohmann::json to_json(const Integer &z) {
  if (z.fits_slong_p())
    return z.get_si();
  return z.get_str();
}

nlohmann::json to_json(const Rational &q) {
  if (is_integral(q))
    return to_json(Integer(q.get_num()));
  return q.get_str();
}

nlohmann::json to_json(const FGAbelianGroup &g) {
  nlohmann::json t = nlohmann::json::array();
  for (const auto &d : g.torsion)
    t.push_back(to_json(d));
  return {{"free_rank", g.free_rank}, {"torsion", t}, {"text", g.str()}};
}

nlohmann::json to_json(const IntMatrix &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      r.push_back(to_json(m(i, j)));
    rows.push_back(r);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

nlohmann::json to_json(const PolyMatrix &m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix int_matrix_from_json(const nlohmann::json &j) {
  return from_json_mirror<Integer>(j, integer_from_json);
}

PolyMatrix poly_matrix_from_json(const nlohmann::json &j) {
  return from_json_mirror<IntPoly>(j, poly_from_json);
}

IntMatrix int_matrix_from_json_any(const nlohmann::json &j) {
  if (j.is_array()) {
    std::size_t rows = j.size();
    std::size_t cols = rows && j[0].is_array() ? j[0].size() : 0;
    return from_json_rows<Integer>(j, rows, cols, integer_from_json);
  }
  if (j.is_number() || j.is_string())
    return IntMatrix(1, 1, {integer_from_json(j)});
  return int_matrix_from_json(j);
}

} // namespace sft
