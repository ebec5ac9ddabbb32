#include "ushift/presentation_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>

#include "ushift/error.hpp"

namespace ushift {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

struct Entry {
  std::string value;
  int line;
  int column;
};

struct Section {
  std::string name;
  int line;
  std::map<std::string, Entry> entries;
};

Universe parse_universe(const Entry& entry) {
  if (entry.value == "infinite") return Universe::infinite();
  try {
    std::size_t used = 0;
    const long long n = std::stoll(entry.value, &used);
    if (used == entry.value.size() && n >= 1) return Universe::finite(n);
  } catch (const std::exception&) {
  }
  throw ParseError("universe must be 'infinite' or a positive integer", entry.line, entry.column);
}

Index parse_index(const Entry& entry) {
  try {
    std::size_t used = 0;
    const long long n = std::stoll(entry.value, &used);
    if (used == entry.value.size() && n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw ParseError("expected a positive index", entry.line, entry.column);
}

const Entry& require(const Section& section, const std::string& key) {
  auto it = section.entries.find(key);
  if (it == section.entries.end()) {
    throw ParseError("[" + section.name + "] needs key '" + key + "'", section.line, 1);
  }
  return it->second;
}

}  // namespace

AffineRule parse_affine_rule(const std::string& text, int line, int column) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  static const std::regex affine(R"(^(?:(\d+)\*)?i(?:([+-]\d+))?$)");
  static const std::regex constant(R"(^(\d+)$)");
  std::smatch m;
  if (std::regex_match(compact, m, affine)) {
    AffineRule rule;
    rule.scale = m[1].matched ? std::stoll(m[1].str()) : 1;
    rule.offset = m[2].matched ? std::stoll(m[2].str()) : 0;
    return rule;
  }
  if (std::regex_match(compact, m, constant)) return AffineRule{0, std::stoll(m[1].str())};
  throw ParseError("source rule must look like a*i+b, i, i-1 or a constant", line, column);
}

std::string to_string(const AffineRule& rule) {
  if (rule.scale == 0) return std::to_string(rule.offset);
  std::string out = std::to_string(rule.scale) + "*i";
  if (rule.offset > 0) out += "+" + std::to_string(rule.offset);
  if (rule.offset < 0) out += std::to_string(rule.offset);
  return out;
}

Presentation parse_presentation(const std::string& text, const std::string& name) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no, 1);
      sections.push_back({trim(line.substr(1, line.size() - 2)), line_no, {}});
      const auto& section_name = sections.back().name;
      if (section_name != "vertices" && section_name != "edges" && section_name != "family") {
        throw ParseError("unknown section [" + section_name + "]", line_no, 1);
      }
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos || (hash != std::string::npos && eq > hash)) {
      throw ParseError("expected 'key = value'", line_no, 1);
    }
    if (sections.empty()) throw ParseError("key outside of a section", line_no, 1);
    const std::string key = trim(raw.substr(0, eq));
    const std::string rest = hash == std::string::npos ? raw.substr(eq + 1) : raw.substr(eq + 1, hash - eq - 1);
    const auto value_start = raw.find_first_not_of(" \t", eq + 1);
    const int column = static_cast<int>(value_start == std::string::npos ? eq + 2 : value_start + 1);
    auto& entries = sections.back().entries;
    if (entries.count(key)) throw ParseError("duplicate key '" + key + "'", line_no, 1);
    entries[key] = Entry{trim(rest), line_no, column};
  }

  Presentation p;
  p.name = name;
  std::optional<Universe> vertices;
  std::optional<Universe> edges;
  for (const auto& section : sections) {
    if (section.name == "vertices") {
      if (vertices) throw ParseError("duplicate [vertices] section", section.line, 1);
      vertices = parse_universe(require(section, "universe"));
    } else if (section.name == "edges") {
      if (edges) throw ParseError("duplicate [edges] section", section.line, 1);
      edges = parse_universe(require(section, "universe"));
    }
  }
  if (!vertices) throw ParseError("missing [vertices] section", 1, 1);
  p.vertices = *vertices;

  // Index sets are read over the infinite universe and rebased at the end,
  // once the edge universe is known.
  const Universe staging = Universe::infinite();
  Index top_edge = 0;
  bool infinite_edges = false;
  for (const auto& section : sections) {
    if (section.name != "family") continue;
    const bool single = section.entries.count("edge") > 0;
    if (auto kind = section.entries.find("kind"); kind != section.entries.end()) {
      const std::string& k = kind->second.value;
      if (k != "single" && k != "indexed") {
        throw ParseError("kind must be 'single' or 'indexed'", kind->second.line, kind->second.column);
      }
      if ((k == "single") != single) {
        throw ParseError("kind '" + k + "' does not match the keys given", kind->second.line,
                         kind->second.column);
      }
    }
    for (const auto& [key, entry] : section.entries) {
      const bool known = key == "kind" || key == "edge" || key == "indices" || key == "source" ||
                         key == "range" || key.rfind("range.", 0) == 0;
      if (!known) throw ParseError("unknown key '" + key + "'", entry.line, 1);
    }
    if (single) {
      SingleEdge edge;
      edge.edge = parse_index(require(section, "edge"));
      const Entry& source = require(section, "source");
      edge.source = parse_index(source);
      const Entry& range = require(section, "range");
      edge.range = parse_set(range.value, p.vertices, range.line, range.column);
      top_edge = std::max(top_edge, edge.edge);
      p.families.emplace_back(std::move(edge));
      continue;
    }
    IndexedFamily family;
    const Entry& indices = require(section, "indices");
    family.indices = parse_set(indices.value, staging, indices.line, indices.column);
    const Entry& source = require(section, "source");
    family.source = parse_affine_rule(source.value, source.line, source.column);
    if (auto plain = section.entries.find("range"); plain != section.entries.end()) {
      family.ranges.push_back(parse_set(plain->second.value, p.vertices, plain->second.line,
                                        plain->second.column));
    } else {
      for (std::size_t r = 0;; ++r) {
        auto it = section.entries.find("range." + std::to_string(r));
        if (it == section.entries.end()) break;
        family.ranges.push_back(parse_set(it->second.value, p.vertices, it->second.line, it->second.column));
      }
      std::size_t declared = 0;
      for (const auto& [key, entry] : section.entries) declared += key.rfind("range.", 0) == 0;
      if (family.ranges.empty() || declared != family.ranges.size()) {
        throw ParseError("ranges must be 'range' or 'range.0' .. 'range.<q-1>'", section.line, 1);
      }
    }
    if (family.indices.cardinality().infinite) {
      infinite_edges = true;
    } else if (auto members = family.indices.members(); !members.empty()) {
      top_edge = std::max(top_edge, members.back());
    }
    p.families.emplace_back(std::move(family));
  }
  if (edges) {
    p.edges = *edges;
  } else {
    p.edges = infinite_edges ? Universe::infinite() : Universe::finite(std::max<Index>(top_edge, 1));
  }
  for (auto& family : p.families) {
    if (auto* indexed = std::get_if<IndexedFamily>(&family)) {
      UPSet rebased = indexed->indices.rebase(p.edges);
      if (rebased.rebase(staging) != indexed->indices) {
        throw ParseError("family indices exceed the edge universe " + p.edges.to_string(), 1, 1);
      }
      indexed->indices = std::move(rebased);
    }
  }
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidPresentation, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_presentation(text.str(), path);
}

std::string write_presentation(const Presentation& p) {
  std::ostringstream out;
  out << "[vertices]\nuniverse = " << p.vertices.to_string() << "\n";
  out << "\n[edges]\nuniverse = " << p.edges.to_string() << "\n";
  for (const auto& family : p.families) {
    out << "\n[family]\n";
    if (const auto* single = std::get_if<SingleEdge>(&family)) {
      out << "kind = single\nedge = " << single->edge << "\nsource = " << single->source
          << "\nrange = " << single->range.to_string() << "\n";
      continue;
    }
    const auto& indexed = std::get<IndexedFamily>(family);
    out << "kind = indexed\nindices = " << indexed.indices.to_string()
        << "\nsource = " << to_string(indexed.source) << "\n";
    if (indexed.ranges.size() == 1) {
      out << "range = " << indexed.ranges[0].to_string() << "\n";
    } else {
      for (std::size_t r = 0; r < indexed.ranges.size(); ++r) {
        out << "range." << r << " = " << indexed.ranges[r].to_string() << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace ushift
