#include "qpj/model_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qpj/errors.hpp"
#include "qpj/format.hpp"

namespace qpj {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

double number(const std::string& s, int line) {
  try {
    return from_text(s);
  } catch (const std::invalid_argument&) {
    throw ParseError("not a number: '" + s + "'", line);
  }
}

int integer(const std::string& s, int line) {
  int k = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), k);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not an integer frequency: '" + s + "'", line);
  }
  return k;
}

}  // namespace

JacobiModel parse_model(std::istream& is, const std::string& label) {
  std::vector<double> alpha;
  std::vector<TrigPoly::Term> c_terms, v_terms;
  bool have_alpha = false;
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const std::string text = raw.substr(0, raw.find('#'));
    const auto words = split(text);
    if (words.empty()) continue;
    if (const auto eq = text.find('='); eq != std::string::npos) {
      const auto key = split(text.substr(0, eq));
      if (key.size() != 1 || key[0] != "alpha") throw ParseError("unknown setting", line);
      if (have_alpha) throw ParseError("alpha given twice", line);
      for (const auto& w : split(text.substr(eq + 1))) alpha.push_back(number(w, line));
      if (alpha.empty()) throw ParseError("alpha needs at least one value", line);
      have_alpha = true;
      continue;
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'alpha = ...', 'c: ...' or 'v: ...'", line);
    const auto key = split(text.substr(0, colon));
    if (key.size() != 1 || (key[0] != "c" && key[0] != "v")) throw ParseError("unknown coefficient kind", line);
    if (!have_alpha) throw ParseError("coefficients before alpha", line);
    const auto fields = split(text.substr(colon + 1));
    const std::size_t d = alpha.size();
    if (fields.size() != d + 2) {
      throw ParseError("expected " + std::to_string(d) + " frequencies and re im", line);
    }
    TrigPoly::Term t;
    for (std::size_t i = 0; i < d; ++i) t.k.push_back(integer(fields[i], line));
    t.a = cplx(number(fields[d], line), number(fields[d + 1], line));
    (key[0] == "c" ? c_terms : v_terms).push_back(std::move(t));
  }
  if (!have_alpha) throw ParseError("missing alpha", line + 1);
  const int dim = static_cast<int>(alpha.size());
  return JacobiModel(alpha, TrigPoly(dim, c_terms), TrigPoly(dim, v_terms), label);
}

JacobiModel load_model(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open model file " + path.string());
  return parse_model(is, path.stem().string());
}

void write_model(std::ostream& os, const JacobiModel& m) {
  os << "# " << m.label() << "\nalpha =";
  for (double a : m.alpha()) os << ' ' << to_text(a);
  os << '\n';
  auto terms = [&](const char* name, const TrigPoly& p) {
    for (const auto& t : p.terms()) {
      os << name << ':';
      for (int k : t.k) os << ' ' << k;
      os << ' ' << to_text(t.a.real()) << ' ' << to_text(t.a.imag()) << '\n';
    }
  };
  terms("c", m.c());
  terms("v", m.v());
}

}  // namespace qpj
