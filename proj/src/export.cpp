#include "probtree/export.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "probtree/error.hpp"

namespace probtree {
namespace {

using nlohmann::json;

std::string format_double(double v, std::chars_format fmt, int precision) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, fmt, precision);
  return std::string(buf, end);
}

std::string json_string(const std::string& s) { return json(s).dump(); }

std::string json_value(const CategoricalValue& v) {
  return v.is_integer() ? std::to_string(v.as_integer()) : json_string(v.as_text());
}

void write_node(const Node& node, int indent, std::string& out) {
  const std::string pad(indent, ' ');
  out += "{\n";
  out += pad + "  \"column\": " + json_string(node.column) + ",\n";
  out += pad + "  \"data\": [";
  for (std::size_t i = 0; i < node.data.size(); ++i) {
    const DataNode& d = node.data[i];
    out += i == 0 ? "\n" : ",\n";
    out += pad + "    {\"value\": " + json_value(d.value) + ", \"probability\": " +
           format_double(d.probability, std::chars_format::general, 17);
    if (d.next) {
      out += ", \"child\": ";
      write_node(*d.next, indent + 4, out);
    }
    out += "}";
  }
  out += "\n" + pad + "  ]\n" + pad + "}";
}

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::ParseError, what);
}

const json& member(const json& object, const char* key) {
  auto it = object.find(key);
  if (it == object.end()) parse_fail(std::string("missing member '") + key + "'");
  return *it;
}

CategoricalValue parse_cell(const json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned() &&
        v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
      parse_fail("integer value out of range");
    }
    return CategoricalValue(v.get<std::int64_t>());
  }
  if (v.is_string()) return CategoricalValue(v.get<std::string>());
  parse_fail("value must be an integer or a string");
}

Node parse_node(const json& j) {
  if (!j.is_object()) parse_fail("node must be an object");
  const json& column = member(j, "column");
  const json& data = member(j, "data");
  if (!column.is_string()) parse_fail("node column must be a string");
  if (!data.is_array()) parse_fail("node data must be an array");

  Node node;
  node.column = column.get<std::string>();
  for (const json& entry : data) {
    if (!entry.is_object()) parse_fail("alternative must be an object");
    const json& p = member(entry, "probability");
    if (!p.is_number()) parse_fail("probability must be a number");
    DataNode d;
    d.value = parse_cell(member(entry, "value"));
    d.probability = p.get<double>();
    if (auto child = entry.find("child"); child != entry.end() && !child->is_null()) {
      d.next = std::make_unique<Node>(parse_node(*child));
    }
    node.data.push_back(std::move(d));
  }
  return node;
}

TreeMetadata parse_metadata(const json& j) {
  TreeMetadata meta;
  if (j.is_null()) return meta;
  if (!j.is_object()) parse_fail("metadata must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "source_rows") {
      if (!value.is_number_unsigned()) parse_fail("source_rows must be a non-negative integer");
      meta.source_rows = value.get<std::size_t>();
    } else if (key == "build_timestamp" || key == "rng_algorithm") {
      if (!value.is_string()) parse_fail(key + " must be a string");
      (key == "build_timestamp" ? meta.build_timestamp : meta.rng_algorithm) =
          value.get<std::string>();
    } else if (value.is_string()) {
      meta.extra[key] = value.get<std::string>();
    } else {
      meta.extra[key] = value.dump();
    }
  }
  return meta;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

struct DotWriter {
  const std::vector<std::string>& columns;
  std::string out;
  std::size_t next_id = 0;
  Record path;

  // Emits one vertex per alternative under `node`, linked from `parent_id`.
  void walk(const Node& node, const std::string& parent_id) {
    for (const auto& d : node.data) {
      path.push_back(d.value);
      const std::string id = "n" + std::to_string(next_id++);
      out += "  " + id + " [label=\"" + dot_escape(path_label(columns, path, !d.next)) +
             "\"];\n";
      if (!parent_id.empty()) {
        out += "  " + parent_id + " -> " + id + " [label=\"" +
               format_double(d.probability, std::chars_format::fixed, 6) + "\"];\n";
      }
      if (d.next) walk(*d.next, id);
      path.pop_back();
    }
  }
};

void collect_edges(const std::vector<std::string>& columns, const Node& node,
                   Record& path, std::vector<GraphEdge>& edges) {
  const std::string from = path_label(columns, path, false);
  for (const auto& d : node.data) {
    path.push_back(d.value);
    edges.push_back({from, path_label(columns, path, !d.next), d.probability});
    if (d.next) collect_edges(columns, *d.next, path, edges);
    path.pop_back();
  }
}

bool needs_quotes(const std::string& s, char delimiter) {
  return s.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string::npos;
}

void append_cell(std::string& out, const std::string& s, char delimiter) {
  if (!needs_quotes(s, delimiter)) {
    out += s;
    return;
  }
  out += '"';
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

}  // namespace

std::string to_json(const ProbabilityTree& tree, const TreeMetadata& metadata) {
  std::string out = "{\n";
  out += "  \"format_version\": " + std::to_string(kTreeFormatVersion) + ",\n";
  out += "  \"columns\": [";
  for (std::size_t i = 0; i < tree.columns().size(); ++i) {
    if (i > 0) out += ", ";
    out += json_string(tree.columns()[i]);
  }
  out += "],\n";

  // Keys in lexicographic order so the document is stable.
  json meta = json::object();
  if (metadata.build_timestamp) meta["build_timestamp"] = *metadata.build_timestamp;
  for (const auto& [key, value] : metadata.extra) meta[key] = value;
  if (metadata.rng_algorithm) meta["rng_algorithm"] = *metadata.rng_algorithm;
  if (metadata.source_rows) meta["source_rows"] = *metadata.source_rows;
  out += "  \"metadata\": " + meta.dump() + ",\n";

  out += "  \"root\": ";
  write_node(tree.root(), 2, out);
  out += "\n}\n";
  return out;
}

TreeDocument read_tree_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("document must be a JSON object");

  const json& version = member(doc, "format_version");
  if (!version.is_number_integer()) parse_fail("format_version must be an integer");
  if (version.get<std::int64_t>() != kTreeFormatVersion) {
    throw Error(ErrorCode::VersionMismatch,
                "format_version " + version.dump() + " is not supported (expected " +
                    std::to_string(kTreeFormatVersion) + ")");
  }

  const json& columns_json = member(doc, "columns");
  if (!columns_json.is_array()) parse_fail("columns must be an array");
  std::vector<std::string> columns;
  for (const json& c : columns_json) {
    if (!c.is_string()) parse_fail("column names must be strings");
    columns.push_back(c.get<std::string>());
  }

  TreeMetadata meta;
  if (auto it = doc.find("metadata"); it != doc.end()) meta = parse_metadata(*it);

  Node root = parse_node(member(doc, "root"));
  return TreeDocument{kTreeFormatVersion,
                      ProbabilityTree::from_root(std::move(columns), std::move(root)),
                      std::move(meta)};
}

ProbabilityTree from_json(std::string_view text) { return read_tree_document(text).tree; }

std::string path_label(const std::vector<std::string>& columns, const Record& values,
                       bool leaf) {
  std::string label;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) label += " | ";
    label += columns.at(i) + ", v=" + values[i].to_string();
  }
  if (leaf) label += " | Leaf";
  return label;
}

std::vector<GraphEdge> tree_edges(const ProbabilityTree& tree) {
  std::vector<GraphEdge> edges;
  Record path;
  for (const auto& d : tree.root().data) {
    if (!d.next) continue;
    path.assign(1, d.value);
    collect_edges(tree.columns(), *d.next, path, edges);
  }
  return edges;
}

std::vector<TreeComponent> connected_components(const ProbabilityTree& tree) {
  std::vector<TreeComponent> out;
  Record path;
  for (const auto& d : tree.root().data) {
    TreeComponent component{d.value, {}};
    if (d.next) {
      path.assign(1, d.value);
      collect_edges(tree.columns(), *d.next, path, component.edges);
    }
    out.push_back(std::move(component));
  }
  return out;
}

std::string to_dot(const ProbabilityTree& tree, const DotOptions& options) {
  DotWriter writer{tree.columns(), {}, 0, {}};
  writer.out = "digraph probability_tree {\n  node [shape=box];\n";
  std::string parent;
  if (options.single_root) {
    writer.out += "  root [label=\"root\"];\n";
    parent = "root";
  }
  writer.walk(tree.root(), parent);
  writer.out += "}\n";
  return std::move(writer.out);
}

std::string format_csv(const CategoricalTable& table, char delimiter) {
  std::string out;
  auto line = [&](auto begin, auto end, auto to_text) {
    for (auto it = begin; it != end; ++it) {
      if (it != begin) out += delimiter;
      append_cell(out, to_text(*it), delimiter);
    }
    out += '\n';
  };
  line(table.columns().begin(), table.columns().end(),
       [](const std::string& s) { return s; });
  for (const auto& row : table.rows()) {
    line(row.begin(), row.end(), [](const CategoricalValue& v) { return v.to_string(); });
  }
  return out;
}

void write_csv(const CategoricalTable& table, const std::filesystem::path& path,
               char delimiter) {
  write_text_file(path, format_csv(table, delimiter));
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace probtree
