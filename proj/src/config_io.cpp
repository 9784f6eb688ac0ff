#include "scde/config_io.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>

#include "scde/de_kernel.hpp"
#include "scde/protograph_de.hpp"
#include "scde/two_type.hpp"

namespace scde {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw std::invalid_argument("malformed number: " + text);
  }
  return v;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::string::size_type start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_number(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (unsigned i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

namespace {

int parse_int(const std::string& text) {
  const double v = parse_number(text);
  const int n = static_cast<int>(v);
  if (static_cast<double>(n) != v) throw std::invalid_argument("expected an integer: " + text);
  return n;
}

}  // namespace

KvPairs to_kv(const SystemSpec& spec) {
  KvPairs kv;
  if (const auto* s = std::get_if<CoupledEnsembleSpec>(&spec)) {
    kv.emplace_back("dv", format_number(s->dv));
    kv.emplace_back("dc", format_number(s->dc));
    kv.emplace_back("nu", join_numbers(s->nu.weights()));
    kv.emplace_back("L", format_number(s->L));
  } else if (const auto* t = std::get_if<TwoTypeSpec>(&spec)) {
    kv.emplace_back("dv", format_number(t->dv));
    kv.emplace_back("alpha_upper", format_number(t->alpha_upper));
    kv.emplace_back("alpha_lower", format_number(t->alpha_lower));
    kv.emplace_back("L", format_number(t->L));
  } else {
    const auto& c = std::get<ProtographChain>(spec);
    kv.emplace_back("dv", format_number(c.dv()));
    kv.emplace_back("b1", format_number(c.b1()));
    kv.emplace_back("b2", format_number(c.b2()));
    kv.emplace_back("L", format_number(c.chain_length()));
  }
  return kv;
}

SystemSpec parse_system(const std::map<std::string, std::string>& kv) {
  auto has = [&](const char* k) { return kv.count(k) > 0; };
  auto get = [&](const char* k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw std::invalid_argument(std::string("missing key: ") + k);
    return it->second;
  };
  for (const auto& [key, value] : kv) {
    (void)value;
    if (key != "dv" && key != "dc" && key != "L" && key != "nu" && key != "alpha_upper" &&
        key != "alpha_lower" && key != "b1" && key != "b2") {
      throw std::invalid_argument("unknown system key: " + key);
    }
  }

  const bool proto = has("b1") || has("b2");
  const bool two_type = has("alpha_upper") || has("alpha_lower");
  if (proto && (two_type || has("nu") || has("dc"))) {
    throw std::invalid_argument("protograph keys cannot mix with other system keys");
  }
  if (two_type && (has("nu") || has("dc"))) {
    throw std::invalid_argument("two-type keys cannot mix with single-type keys");
  }

  if (proto) {
    return build_protograph_chain(parse_int(get("dv")), parse_int(get("b1")),
                                  parse_int(get("b2")), parse_int(get("L")));
  }
  if (two_type) {
    return TwoTypeSpec(parse_int(get("dv")), parse_number(get("alpha_upper")),
                       parse_number(get("alpha_lower")), parse_int(get("L")));
  }
  return CoupledEnsembleSpec(parse_int(get("dv")), parse_int(get("dc")),
                             SmoothingDistribution(parse_number_list(get("nu"))),
                             parse_int(get("L")));
}

std::unique_ptr<DeSystem> make_system(const SystemSpec& spec) {
  if (const auto* s = std::get_if<CoupledEnsembleSpec>(&spec)) {
    return std::make_unique<SingleTypeSystem>(*s);
  }
  if (const auto* t = std::get_if<TwoTypeSpec>(&spec)) {
    return std::make_unique<TwoTypeSystem>(*t);
  }
  return std::make_unique<ProtographSystem>(std::get<ProtographChain>(spec));
}

}  // namespace scde
