#include "evidence.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace dnt::cli {

using nlohmann::json;

namespace {

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void require_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed,
                  std::initializer_list<std::string_view> required) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError(child(path, key), "unknown field");
  }
  for (auto r : required) {
    if (!j.contains(std::string(r))) throw ParseError(child(path, r), "missing required field");
  }
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

SubsetMask set_at(const json& j, const Frame& frame, const std::string& path) {
  SubsetMask s;
  const auto& arr = array_at(j, path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string label = string_at(arr[k], child(path, k));
    try {
      const SubsetMask e(1u << frame.index_of(label));
      if (s.intersects(e)) throw ParseError(child(path, k), "label '" + label + "' repeated");
      s = s | e;
    } catch (const Error& e) {
      throw ParseError(child(path, k), e.what());
    }
  }
  return s;
}

Frame parse_frame(const json& j) {
  const auto& arr = array_at(j, "/frame");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < arr.size(); ++k) labels.push_back(string_at(arr[k], child("/frame", k)));
  try {
    return make_frame(std::move(labels));
  } catch (const Error& e) {
    throw ParseError("/frame", e.what());
  }
}

NonExclusivityMatrix parse_u(const json& j, const Frame& frame) {
  const std::string path = "/nonexclusivity";
  require_keys(j, path, {"relation", "pairs"}, {});
  if (j.contains("relation") == j.contains("pairs")) {
    throw ParseError(path, "give exactly one of 'relation' and 'pairs'");
  }
  try {
    if (j.contains("relation")) {
      const std::string rpath = child(path, "relation");
      const auto& rows = array_at(j["relation"], rpath);
      const std::size_t n = frame.size();
      if (rows.size() != n) throw ParseError(rpath, "expected " + std::to_string(n) + " rows");
      std::vector<double> values;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& row = array_at(rows[i], child(rpath, i));
        if (row.size() != n) throw ParseError(child(rpath, i), "expected " + std::to_string(n) + " entries");
        for (std::size_t k = 0; k < n; ++k) values.push_back(number_at(row[k], child(child(rpath, i), k)));
      }
      return u_from_relation(frame, FuzzyRelation::make(n, std::move(values)));
    }
    const std::string ppath = child(path, "pairs");
    const auto& arr = array_at(j["pairs"], ppath);
    std::vector<DisjointPair> pairs;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      const std::string p = child(ppath, k);
      require_keys(arr[k], p, {"i", "j", "u"}, {"i", "j", "u"});
      pairs.push_back({set_at(arr[k]["i"], frame, child(p, "i")), set_at(arr[k]["j"], frame, child(p, "j")),
                       number_at(arr[k]["u"], child(p, "u"))});
    }
    return u_explicit(frame, pairs);
  } catch (const Error& e) {
    throw ParseError(path, e.what());
  }
}

NamedDNumber parse_dnumber(const json& j, const Frame& frame, const std::string& path) {
  require_keys(j, path, {"name", "masses"}, {"name", "masses"});
  const std::string name = string_at(j["name"], child(path, "name"));
  const std::string mpath = child(path, "masses");
  const auto& arr = array_at(j["masses"], mpath);
  std::vector<FocalElement> focal;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string p = child(mpath, k);
    require_keys(arr[k], p, {"set", "mass"}, {"set", "mass"});
    focal.push_back({set_at(arr[k]["set"], frame, child(p, "set")), number_at(arr[k]["mass"], child(p, "mass"))});
  }
  try {
    return NamedDNumber{name, DNumber::make(frame, focal)};
  } catch (const Error& e) {
    throw ParseError(path, "D number '" + name + "': " + e.what());
  }
}

}  // namespace

const DNumber& EvidenceDocument::find(const std::string& name) const {
  for (const auto& d : dnumbers) {
    if (d.name == name) return d.value;
  }
  throw ParseError("/dnumbers", "no D number named '" + name + "'");
}

EvidenceDocument parse_evidence(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  require_keys(root, "", {"frame", "nonexclusivity", "dnumbers", "delta"}, {"frame", "dnumbers"});

  const Frame frame = parse_frame(root["frame"]);
  EvidenceDocument doc{frame, root.contains("nonexclusivity") ? parse_u(root["nonexclusivity"], frame)
                                                              : NonExclusivityMatrix::classical(frame),
                       {}, std::nullopt};

  const auto& arr = array_at(root["dnumbers"], "/dnumbers");
  std::set<std::string> names;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    auto d = parse_dnumber(arr[k], frame, child("/dnumbers", k));
    if (!names.insert(d.name).second) throw ParseError(child("/dnumbers", k), "duplicate name '" + d.name + "'");
    doc.dnumbers.push_back(std::move(d));
  }
  if (root.contains("delta")) {
    const double delta = number_at(root["delta"], "/delta");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ParseError("/delta", "delta must lie in [0,1]");
    doc.delta = delta;
  }
  return doc;
}

EvidenceDocument load_evidence(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_evidence(text.str());
}

double round12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

nlohmann::ordered_json labels_json(const Frame& frame, SubsetMask s) {
  auto out = nlohmann::ordered_json::array();
  for (std::size_t e = 0; e < frame.size(); ++e) {
    if (s.contains(e)) out.push_back(frame.label(e));
  }
  return out;
}

nlohmann::ordered_json to_json(const Frame& frame, const NonExclusivityMatrix& u,
                               const std::vector<NamedDNumber>& dnumbers) {
  nlohmann::ordered_json doc;
  doc["frame"] = frame.labels();
  if (const auto& r = u.relation()) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r->size(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (std::size_t k = 0; k < r->size(); ++k) row.push_back(round12((*r)(i, k)));
      rows.push_back(std::move(row));
    }
    doc["nonexclusivity"]["relation"] = std::move(rows);
  } else {
    auto pairs = nlohmann::ordered_json::array();
    const std::uint32_t full = frame.full().bits;
    for (std::uint32_t a = 1; a <= full; ++a) {
      for (std::uint32_t b = a + 1; b <= full; ++b) {
        if ((a & b) != 0) continue;
        const double v = u.entry(SubsetMask(a), SubsetMask(b));
        if (v == 0.0) continue;
        pairs.push_back({{"i", labels_json(frame, SubsetMask(a))},
                         {"j", labels_json(frame, SubsetMask(b))},
                         {"u", round12(v)}});
      }
    }
    doc["nonexclusivity"]["pairs"] = std::move(pairs);
  }
  auto ds = nlohmann::ordered_json::array();
  for (const auto& d : dnumbers) {
    auto masses = nlohmann::ordered_json::array();
    for (const auto& f : d.value.focal()) {
      masses.push_back({{"set", labels_json(frame, f.set)}, {"mass", round12(f.mass)}});
    }
    ds.push_back({{"name", d.name}, {"masses", std::move(masses)}});
  }
  doc["dnumbers"] = std::move(ds);
  return doc;
}

}  // namespace dnt::cli
