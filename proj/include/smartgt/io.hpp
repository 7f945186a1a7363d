#pragma once

#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "smartgt/adaptive.hpp"
#include "smartgt/family.hpp"
#include "smartgt/search.hpp"

namespace smartgt {

/// Malformed family/transcript input; the message carries the location.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Family <-> JSON: {"n": N, "sets": [[...], ...]}, elements ascending.

inline nlohmann::json family_to_json(const Family& f) {
  nlohmann::json j;
  j["n"] = f.n;
  j["sets"] = nlohmann::json::array();
  for (const auto& s : f.sets) j["sets"].push_back(s.elements());
  return j;
}

inline Family family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
    throw ParseError("family JSON must be an object with \"n\" and \"sets\"");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
    throw ParseError("field \"n\" must be a positive integer");
  if (!j["sets"].is_array()) throw ParseError("field \"sets\" must be an array");
  Family f(j["n"].get<int>());
  int si = 0;
  for (const auto& js : j["sets"]) {
    ++si;
    if (!js.is_array()) throw ParseError("sets[" + std::to_string(si - 1) + "] is not an array");
    ElemSet s(f.n);
    for (const auto& je : js) {
      if (!je.is_number_integer())
        throw ParseError("sets[" + std::to_string(si - 1) + "] contains a non-integer");
      int e = je.get<int>();
      if (e < 1 || e > f.n)
        throw ParseError("sets[" + std::to_string(si - 1) + "]: element " + std::to_string(e) +
                         " outside [1," + std::to_string(f.n) + "]");
      s.add(e);
    }
    f.add(s);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Family <-> plaintext: first line n, then one set per line (elements
// space-separated, ascending; an empty line is the empty set).

inline void family_to_text(const Family& f, std::ostream& os) {
  os << f.n << "\n";
  for (const auto& s : f.sets) {
    bool first = true;
    for (int e : s.elements()) {
      if (!first) os << ' ';
      os << e;
      first = false;
    }
    os << "\n";
  }
}

inline Family family_from_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("line 1: expected the ground-set size n");
  int n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoi(line, &pos);
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos != line.size()) throw ParseError("");
  } catch (...) {
    throw ParseError("line 1: expected a single integer n, got \"" + line + "\"");
  }
  if (n < 1) throw ParseError("line 1: n must be >= 1");
  Family f(n);
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    ElemSet s(n);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      int e = 0;
      try {
        std::size_t pos = 0;
        e = std::stoi(tok, &pos);
        if (pos != tok.size()) throw ParseError("");
      } catch (...) {
        throw ParseError("line " + std::to_string(lineno) + ": bad element \"" + tok + "\"");
      }
      if (e < 1 || e > n)
        throw ParseError("line " + std::to_string(lineno) + ": element " + std::to_string(e) +
                         " outside [1," + std::to_string(n) + "]");
      s.add(e);
    }
    f.add(s);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Transcript JSON: {"n": N, "steps": [{"set": [..], "answer": "YES|NO"}]}

inline nlohmann::json transcript_to_json(const Transcript& t) {
  nlohmann::json j;
  j["n"] = t.n;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : t.steps) {
    nlohmann::json js;
    js["set"] = s.query.elements();
    js["answer"] = s.answer == Answer::Yes ? "YES" : "NO";
    j["steps"].push_back(js);
  }
  return j;
}

// ---------------------------------------------------------------------------
// SearchResult JSON: {"outcome": ..., "size": k?, "witness": {...}?, "explored": N}

inline nlohmann::json search_result_to_json(const SearchResult& r) {
  nlohmann::json j;
  switch (r.outcome) {
    case SearchResult::Outcome::Exists: j["outcome"] = "exists"; break;
    case SearchResult::Outcome::NotExists: j["outcome"] = "not_exists"; break;
    case SearchResult::Outcome::Inconclusive: j["outcome"] = "inconclusive"; break;
  }
  if (r.witness) {
    j["size"] = r.witness->size();
    j["witness"] = family_to_json(*r.witness);
  }
  j["explored"] = r.explored;
  return j;
}

}  // namespace smartgt
