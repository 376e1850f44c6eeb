#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sap/error.hpp"
#include "sap/matrix.hpp"
#include "sap/protocol.hpp"
#include "sap/semiring.hpp"

namespace sap {

// Raised when a loaded table pair parses but violates a semiring law.
class InvalidSemiring : public Error {
 public:
  explicit InvalidSemiring(std::vector<AxiomViolation> violations);
  const std::vector<AxiomViolation>& violations() const noexcept {
    return violations_;
  }

 private:
  std::vector<AxiomViolation> violations_;
};

// Semiring interchange document (JSON):
//   {"name": "...", "order": n, "elements": [n strings],
//    "add": [n rows of n indices], "mul": [n rows of n indices]}
// "name" and "elements" are optional. Rows are left operands.
Semiring parse_semiring(std::string_view text, std::string fallback_name = "file");
Semiring load_semiring(const std::filesystem::path& path);
std::string to_json(const Semiring& s);

// Matrix text: a line holding n, then n rows of n element indices.
Matrix parse_matrix(std::string_view text, SemiringPtr ring);
std::string to_text(const Matrix& m);
void write_matrix(std::ostream& out, const Matrix& m);

// Labelled matrices, each a label line followed by a matrix block. A
// transcript carries S, M1, M2, A, B and optionally the key K.
struct LabelledMatrices {
  std::vector<std::pair<std::string, Matrix>> items;

  const Matrix* find(std::string_view label) const;
  const Matrix& get(std::string_view label) const;  // throws ParseError
};

LabelledMatrices parse_labelled(std::string_view text, SemiringPtr ring);
std::string to_text(const LabelledMatrices& lm);

PublicTranscript transcript_from(const LabelledMatrices& lm, SemiringPtr ring);

std::string read_file(const std::filesystem::path& path);

}  // namespace sap
