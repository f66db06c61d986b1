#include "io.hpp"

#include <sstream>

namespace hznf::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad " + what + ": '" + s + "'");
  }
}

MuExp parse_mu_list(const std::string& s, int q, int line) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError(line, "bad exponent list: '" + s + "'");
  MuExp mu;
  const std::string body = trim(s.substr(1, s.size() - 2));
  if (!body.empty()) {
    std::istringstream is(body);
    std::string item;
    while (std::getline(is, item, ','))
      mu.push_back(parse_int(trim(item), line, "exponent"));
  }
  if (static_cast<int>(mu.size()) != q)
    throw ParseError(line, "exponent list has " + std::to_string(mu.size()) +
                               " entries, expected " + std::to_string(q));
  for (int e : mu)
    if (e < 0) throw ParseError(line, "negative exponent");
  return mu;
}

}  // namespace

Field parse_field(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  bool saw_header = false, saw_params = false, saw_body = false, saw_rotation = false;
  int q = 0;
  Field f(0);

  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;

    auto toks = split_ws(s);
    if (!saw_header) {
      if (toks.size() != 2 || toks[0] != "hznf" || toks[1] != "1")
        throw ParseError(line, "expected header 'hznf 1'");
      saw_header = true;
      continue;
    }
    if (toks[0] == "params") {
      if (saw_params) throw ParseError(line, "duplicate params line");
      if (saw_body) throw ParseError(line, "params must precede rotation/terms");
      if (toks.size() != 2) throw ParseError(line, "expected 'params <q>'");
      q = parse_int(toks[1], line, "parameter count");
      if (q < 0) throw ParseError(line, "negative parameter count");
      saw_params = true;
      f = Field(q);
      continue;
    }
    if (toks[0] == "rotation") {
      if (saw_rotation) throw ParseError(line, "duplicate rotation line");
      if (toks.size() != 2) throw ParseError(line, "expected 'rotation <p/q>'");
      saw_body = saw_rotation = true;
      try {
        f.set_rotation(rat_parse(toks[1]));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
      continue;
    }
    if (toks[0] == "E") {
      saw_body = true;
      // Layout: E <l> <k> [m1,...,mq] <p/q>.  The exponent list may contain
      // spaces, so locate the brackets in the raw text instead of tokenizing.
      const auto lb = s.find('[');
      const auto rb = s.find(']');
      if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        throw ParseError(line, "expected 'E <l> <k> [exps] <p/q>'");
      auto head = split_ws(s.substr(0, lb));
      auto tail = split_ws(s.substr(rb + 1));
      if (head.size() != 3 || tail.size() != 1)
        throw ParseError(line, "expected 'E <l> <k> [exps] <p/q>'");
      ETerm t;
      t.l = parse_int(head[1], line, "l");
      t.k = parse_int(head[2], line, "k");
      t.mu = parse_mu_list(s.substr(lb, rb - lb + 1), q, line);
      if (t.l < 0 || t.k < 0) throw ParseError(line, "negative index");
      if (t.l > t.k) throw ParseError(line, "l exceeds k");
      if (t.l == 0 && t.k == 0 && mu_total(t.mu) == 0)
        throw ParseError(line, "constant Euler term is not allowed");
      Rat c;
      try {
        c = rat_parse(tail[0]);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line, e.what());
      }
      f.add(t, c);
      continue;
    }
    throw ParseError(line, "unrecognized line: '" + s + "'");
  }
  if (!saw_header) throw ParseError(line, "missing header 'hznf 1'");
  return f;
}

std::string serialize_field(const Field& f) {
  std::ostringstream os;
  os << "hznf 1\n";
  os << "params " << f.q() << "\n";
  if (f.rotation() != 0) os << "rotation " << rat_str(f.rotation()) << "\n";
  for (const auto& [t, c] : f.terms()) {
    os << "E " << t.l << " " << t.k << " [";
    for (std::size_t i = 0; i < t.mu.size(); ++i) {
      if (i) os << ",";
      os << t.mu[i];
    }
    os << "] " << rat_str(c) << "\n";
  }
  return os.str();
}

}  // namespace hznf::io
