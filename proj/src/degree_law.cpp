#include "smm/degree_law.hpp"

#include <charconv>
#include <cstdlib>
#include <vector>

namespace smm {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    if (pos == std::string_view::npos) {
      parts.push_back(s);
      return parts;
    }
    parts.push_back(s.substr(0, pos));
    s.remove_prefix(pos + 1);
  }
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("bad integer in degree law: " + std::string(s));
  return v;
}

double parse_double(std::string_view s) {
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (end != tmp.c_str() + tmp.size() || tmp.empty())
    throw std::invalid_argument("bad number in degree law: " + tmp);
  return v;
}

}  // namespace

DegreeLaw DegreeLaw::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("degree law must look like name:params, got " +
                                std::string(text));
  std::string_view name = text.substr(0, colon);
  auto args = split(text.substr(colon + 1), ',');
  if (name == "constant") {
    if (args.size() != 1) throw std::invalid_argument("constant law takes one parameter");
    return constant(parse_int(args[0]));
  }
  if (name == "twopoint") {
    if (args.size() != 3) throw std::invalid_argument("twopoint law takes three parameters");
    return two_point(parse_int(args[0]), parse_int(args[1]), parse_double(args[2]));
  }
  if (name == "poissonshift") {
    if (args.size() != 2)
      throw std::invalid_argument("poissonshift law takes two parameters");
    return poisson_shift(parse_double(args[0]), parse_int(args[1]));
  }
  throw std::invalid_argument("unknown degree law: " + std::string(name));
}

}  // namespace smm
