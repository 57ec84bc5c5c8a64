#include "ctv/descriptor.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace ctv {

namespace {

std::size_t count_arg(const json& d, const char* key) {
  if (!d.contains(key) || !d.at(key).is_number_integer() || d.at(key).get<long long>() < 0)
    throw std::invalid_argument(std::string("descriptor needs non-negative integer '") + key + "'");
  return d.at(key).get<std::size_t>();
}

std::size_t parse_count(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("missing number in operand");
  std::size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad number '" + std::string(s) + "' in operand");
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

json parse_operand(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("operand is not valid JSON: ") + e.what());
    }
  }
  if (text == "s0") return json{{"op", "points"}, {"n", 2}};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unrecognized operand '" + std::string(text) + "'");
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "file") return json{{"op", "file"}, {"path", std::string(rest)}};
  if (kind == "chessboard") {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("chessboard operand needs R,K");
    return json{{"op", "chessboard"}, {"rows", parse_count(rest.substr(0, comma))}, {"cols", parse_count(rest.substr(comma + 1))}};
  }
  if (kind == "simplex" || kind == "boundary" || kind == "points" || kind == "cycle")
    return json{{"op", std::string(kind)}, {"n", parse_count(rest)}};
  throw std::invalid_argument("unrecognized operand '" + std::string(text) + "'");
}

Built build(const json& d) {
  if (!d.is_object() || !d.contains("op") || !d.at("op").is_string())
    throw std::invalid_argument("descriptor must be an object with string field 'op'");
  const std::string op = d.at("op").get<std::string>();

  auto sub = [&](const char* key) {
    if (!d.contains(key)) throw std::invalid_argument("descriptor '" + op + "' needs '" + key + "'");
    return build_simplicial(d.at(key));
  };
  auto r_arg = [&] { return static_cast<std::uint32_t>(count_arg(d, "r")); };

  if (op == "simplex") return full_simplex(count_arg(d, "n") + 1);
  if (op == "boundary") return simplex_boundary(count_arg(d, "n") + 1);
  if (op == "points") return discrete_points(count_arg(d, "n"));
  if (op == "s0") return discrete_points(2);
  if (op == "cycle") return cycle_graph(count_arg(d, "n"));
  if (op == "chessboard") return chessboard(count_arg(d, "rows"), count_arg(d, "cols"));
  if (op == "join") {
    if (!d.contains("args") || !d.at("args").is_array() || d.at("args").size() < 2)
      throw std::invalid_argument("join needs 'args' with at least two descriptors");
    std::vector<SimplicialComplex> factors;
    for (const auto& a : d.at("args")) factors.push_back(build_simplicial(a));
    for (const auto& f : factors)
      if (f.n_vertices() == 0) throw std::invalid_argument("join needs nonempty vertex sets");
    return join_all(factors).complex;
  }
  if (op == "join_power") return join_power(sub("arg"), r_arg()).complex;
  if (op == "deleted_join")
    return deleted_join(sub("arg"), r_arg(), static_cast<std::uint32_t>(count_arg(d, "l"))).complex;
  if (op == "deleted_product")
    return deleted_product(sub("arg"), r_arg(), static_cast<std::uint32_t>(count_arg(d, "l")));
  if (op == "rainbow") {
    auto c = coloring_from_json(d.at("colors"));
    return rainbow_subcomplex(c.size(), c);
  }
  if (op == "test_space") return test_space_K(coloring_from_json(d.at("colors")), r_arg()).complex;
  if (op == "complex") return complex_from_json(d);
  if (op == "file") {
    if (!d.contains("path")) throw std::invalid_argument("file descriptor needs 'path'");
    json j = read_json_file(d.at("path").get<std::string>());
    if (j.contains("cells_by_dim")) return cell_complex_from_json(j);
    return complex_from_json(j);
  }
  throw std::invalid_argument("unknown construction '" + op + "'");
}

SimplicialComplex build_simplicial(const json& descriptor) {
  Built b = build(descriptor);
  if (auto* s = std::get_if<SimplicialComplex>(&b)) return std::move(*s);
  throw std::invalid_argument("expected a simplicial complex, got a cell complex");
}

}  // namespace ctv
