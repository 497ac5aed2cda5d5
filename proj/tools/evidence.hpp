#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dnt/dnumber.hpp"
#include "dnt/exclusivity.hpp"

namespace dnt::cli {

/// Malformed or invalid evidence document. The path points into the document,
/// e.g. "/dnumbers/1/masses/0/mass".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& msg)
      : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + msg), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct NamedDNumber {
  std::string name;
  DNumber value;
};

struct EvidenceDocument {
  Frame frame;
  NonExclusivityMatrix u;
  std::vector<NamedDNumber> dnumbers;
  std::optional<double> delta;

  /// Throws ParseError naming the missing D number.
  const DNumber& find(const std::string& name) const;
};

/// Strict parse: unknown fields are rejected, every value is validated.
EvidenceDocument parse_evidence(std::string_view text);
EvidenceDocument load_evidence(const std::string& path);

/// Serializes a frame, U and D numbers in the evidence schema. U is written as
/// a relation when it came from one, otherwise as the nonzero disjoint pairs.
nlohmann::ordered_json to_json(const Frame& frame, const NonExclusivityMatrix& u,
                               const std::vector<NamedDNumber>& dnumbers);

/// Rounds to 12 significant digits so machine output is stable.
double round12(double v);
nlohmann::ordered_json labels_json(const Frame& frame, SubsetMask s);

}  // namespace dnt::cli
