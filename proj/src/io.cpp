#include "sap/io.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace sap {

namespace {

std::string summarize(const std::vector<AxiomViolation>& vs) {
  std::string msg = "tables violate " + std::to_string(vs.size()) +
                    " semiring law instance(s)";
  const std::size_t shown = std::min<std::size_t>(vs.size(), 5);
  for (std::size_t i = 0; i < shown; ++i) msg += "; " + describe(vs[i]);
  if (shown < vs.size()) msg += "; ...";
  return msg;
}

}  // namespace

InvalidSemiring::InvalidSemiring(std::vector<AxiomViolation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

Semiring parse_semiring(std::string_view text, std::string fallback_name) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + static_cast<std::size_t>(std::count(upto.begin(), upto.end(), '\n'));
    throw ParseError(e.what(), line);
  }
  try {
    if (!doc.is_object()) throw ParseError("semiring document must be an object", 0);
    const auto order = doc.at("order").get<std::size_t>();
    std::vector<std::string> names;
    if (doc.contains("elements")) names = doc["elements"].get<std::vector<std::string>>();
    const auto add = doc.at("add").get<Semiring::Table>();
    const auto mul = doc.at("mul").get<Semiring::Table>();
    if (add.size() != order) {
      throw MalformedTables("order is " + std::to_string(order) +
                            " but add has " + std::to_string(add.size()) +
                            " rows");
    }
    std::string name = doc.value("name", fallback_name);
    Semiring s(std::move(name), std::move(names), add, mul);
    if (auto violations = check_axioms(s); !violations.empty()) {
      throw InvalidSemiring(std::move(violations));
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("semiring document: ") + e.what(), 0);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Semiring load_semiring(const std::filesystem::path& path) {
  return parse_semiring(read_file(path), path.stem().string());
}

std::string to_json(const Semiring& s) {
  nlohmann::ordered_json doc;
  doc["name"] = s.name();
  doc["order"] = s.order();
  doc["elements"] = s.element_names();
  Semiring::Table add(s.order(), std::vector<Elem>(s.order()));
  Semiring::Table mul = add;
  for (Elem x = 0; x < s.order(); ++x) {
    for (Elem y = 0; y < s.order(); ++y) {
      add[x][y] = s.add(x, y);
      mul[x][y] = s.mul(x, y);
    }
  }
  doc["add"] = add;
  doc["mul"] = mul;
  return doc.dump() + "\n";
}

namespace {

// Line-oriented reader that skips blank lines and '#' comments.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : in_(std::string(text)) {}

  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_no_; }

 private:
  std::istringstream in_;
  std::size_t line_no_ = 0;
};

std::vector<unsigned long> parse_row(const std::string& line,
                                     std::size_t line_no) {
  std::istringstream in(line);
  std::vector<unsigned long> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(token, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != token.size() || token.empty() || token[0] == '-') {
      throw ParseError("expected a non-negative integer, got '" + token + "'",
                       line_no);
    }
    out.push_back(v);
  }
  return out;
}

Matrix read_matrix(LineReader& reader, SemiringPtr ring) {
  const auto header = reader.next();
  if (!header) throw ParseError("expected matrix dimension", reader.line());
  const auto dim = parse_row(*header, reader.line());
  if (dim.size() != 1 || dim[0] == 0) {
    throw ParseError("matrix header must be a single positive dimension",
                     reader.line());
  }
  const std::size_t n = dim[0];
  std::vector<Elem> entries;
  entries.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto line = reader.next();
    if (!line) {
      throw ParseError("expected " + std::to_string(n) + " matrix rows",
                       reader.line());
    }
    const auto row = parse_row(*line, reader.line());
    if (row.size() != n) {
      throw ParseError("matrix row has " + std::to_string(row.size()) +
                           " entries, expected " + std::to_string(n),
                       reader.line());
    }
    for (unsigned long v : row) {
      if (v >= ring->order()) {
        throw ParseError("entry " + std::to_string(v) +
                             " is not an element of '" + ring->name() + "'",
                         reader.line());
      }
      entries.push_back(static_cast<Elem>(v));
    }
  }
  return Matrix(std::move(ring), n, std::move(entries));
}

}  // namespace

Matrix parse_matrix(std::string_view text, SemiringPtr ring) {
  LineReader reader(text);
  Matrix m = read_matrix(reader, std::move(ring));
  if (reader.next()) throw ParseError("trailing content after matrix", reader.line());
  return m;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.dim() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

std::string to_text(const Matrix& m) {
  std::ostringstream out;
  write_matrix(out, m);
  return out.str();
}

const Matrix* LabelledMatrices::find(std::string_view label) const {
  for (const auto& [name, m] : items) {
    if (name == label) return &m;
  }
  return nullptr;
}

const Matrix& LabelledMatrices::get(std::string_view label) const {
  if (const auto* m = find(label)) return *m;
  throw ParseError("missing matrix '" + std::string(label) + "'", 0);
}

LabelledMatrices parse_labelled(std::string_view text, SemiringPtr ring) {
  LineReader reader(text);
  LabelledMatrices out;
  while (auto label = reader.next()) {
    std::istringstream words(*label);
    std::string name, extra;
    words >> name;
    if (words >> extra) {
      throw ParseError("label line must hold a single word", reader.line());
    }
    if (out.find(name)) throw ParseError("duplicate label '" + name + "'", reader.line());
    out.items.emplace_back(name, read_matrix(reader, ring));
  }
  return out;
}

std::string to_text(const LabelledMatrices& lm) {
  std::ostringstream out;
  for (const auto& [name, m] : lm.items) {
    out << name << '\n';
    write_matrix(out, m);
  }
  return out.str();
}

PublicTranscript transcript_from(const LabelledMatrices& lm, SemiringPtr ring) {
  return PublicTranscript{std::move(ring), lm.get("S"), lm.get("M1"),
                          lm.get("M2"), lm.get("A"), lm.get("B")};
}

}  // namespace sap
