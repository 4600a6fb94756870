#include "osc/format.hpp"

#include <sstream>

#include "osc/errors.hpp"

namespace osc {

namespace {

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    const std::string tok = item.substr(b, e - b + 1);
    std::size_t used = 0;
    T v{};
    try {
      v = parse(tok, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("malformed number '" + tok + "'");
    }
    if (used != tok.size()) throw InvalidArgument("malformed number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  return parse_list<double>(text, [](const std::string& s, std::size_t* n) { return std::stod(s, n); });
}

std::vector<int> parse_int_list(const std::string& text) {
  return parse_list<int>(text, [](const std::string& s, std::size_t* n) { return std::stoi(s, n); });
}

}  // namespace osc
