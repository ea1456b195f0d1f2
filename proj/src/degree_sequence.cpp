#include "degseq/degree_sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace degseq {

DegreeSequence::DegreeSequence(Seq degrees) : d_(std::move(degrees)) {
  if (d_.empty()) throw ParseError("degree sequence must have length >= 1");
  for (int x : d_) {
    if (x < 0) throw ParseError("degree sequence entries must be >= 0");
    m1_ += x;
    delta_ = std::max(delta_, x);
  }
}

Seq DegreeSequence::minus(int a) const {
  Seq out = d_;
  out[static_cast<std::size_t>(a)] -= 1;
  return out;
}

Seq DegreeSequence::minus(int a, int b) const {
  Seq out = d_;
  out[static_cast<std::size_t>(a)] -= 1;
  out[static_cast<std::size_t>(b)] -= 1;
  return out;
}

std::string DegreeSequence::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n();
  j["degrees"] = d_;
  return j.dump();
}

DegreeSequence DegreeSequence::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Seq d = j.at("degrees").get<Seq>();
  if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(d.size()))
    throw ParseError("json field n does not match degrees length");
  return DegreeSequence(std::move(d));
}

DegreeSequence DegreeSequence::parse(const std::string& text) {
  Seq d;
  std::string tok;
  for (char c : text + ",") {
    if (c == ',' || c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      if (!tok.empty()) {
        try {
          std::size_t pos = 0;
          int v = std::stoi(tok, &pos);
          if (pos != tok.size()) throw std::invalid_argument(tok);
          d.push_back(v);
        } catch (const std::exception&) {
          throw ParseError("bad degree token: '" + tok + "'");
        }
        tok.clear();
      }
    } else {
      tok.push_back(c);
    }
  }
  if (d.empty()) throw ParseError("empty degree sequence");
  return DegreeSequence(std::move(d));
}

DegreeSequence DegreeSequence::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open degree file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const Rat& SequenceStats::mu_value() const {
  if (!mu) throw UndefinedError("mu undefined for n < 2");
  return *mu;
}

const std::vector<Rat>& SequenceStats::eps_value() const {
  if (!eps) throw UndefinedError("eps undefined when mean degree is 0");
  return *eps;
}

SequenceStats stats(const DegreeSequence& d) {
  SequenceStats s;
  s.n = d.n();
  const int n = d.n();
  Int m1 = 0, m2 = 0;
  for (int i = 0; i < n; ++i) {
    int x = d[i];
    m1 += x;
    m2 += Int(x) * (x - 1);
    s.delta = std::max(s.delta, x);
  }
  s.m1 = m1;
  s.m2 = m2;
  s.mean = Rat(m1, n);
  if (n >= 2) s.mu = Rat(m1, Int(n) * (n - 1));
  Rat ss = 0;
  for (int i = 0; i < n; ++i) {
    Rat dev = Rat(d[i]) - s.mean;
    ss += dev * dev;
  }
  s.sigma2 = ss / n;
  s.gamma2 = n >= 2 ? ss / (Int(n - 1) * (n - 1)) : Rat(0);
  if (s.mean != 0) {
    std::vector<Rat> eps;
    eps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eps.push_back((Rat(d[i]) - s.mean) / s.mean);
    s.eps = std::move(eps);
  }
  return s;
}

long long l1_distance(const Seq& a, const Seq& b) {
  if (a.size() != b.size()) throw ParseError("l1_distance: length mismatch");
  long long out = 0;
  for (std::size_t i = 0; i < a.size(); ++i) out += std::llabs(static_cast<long long>(a[i]) - b[i]);
  return out;
}

long long l1_distance(const DegreeSequence& a, const DegreeSequence& b) {
  return l1_distance(a.degrees(), b.degrees());
}

bool ball_member(const Seq& d, const Seq& root, long long r, Parity parity) {
  if (d.size() != root.size()) throw ParseError("ball_member: length mismatch");
  long long sum = 0;
  for (int x : d) {
    if (x < 0) return false;
    sum += x;
  }
  if (parity_of_sum(sum) != parity) return false;
  return l1_distance(d, root) <= r;
}

}  // namespace degseq
