#include "nflab/poly.hpp"

#include "nflab/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace nflab {

namespace {

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Distinct permutations of a sorted multiset.
long multiset_permutations(const std::vector<int>& sorted) {
  long count = factorial(static_cast<int>(sorted.size()));
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t k = i;
    while (k < sorted.size() && sorted[k] == sorted[i]) ++k;
    count /= factorial(static_cast<int>(k - i));
    i = k;
  }
  return count;
}

int count_of(const std::vector<int>& sorted, int a) {
  const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), a);
  return static_cast<int>(hi - lo);
}

std::vector<int> without_one(const std::vector<int>& sorted, int a) {
  std::vector<int> out;
  out.reserve(sorted.size() - 1);
  bool removed = false;
  for (int x : sorted) {
    if (!removed && x == a) {
      removed = true;
      continue;
    }
    out.push_back(x);
  }
  return out;
}

std::vector<int> merged(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> distinct(const std::vector<int>& sorted) {
  std::vector<int> out;
  std::unique_copy(sorted.begin(), sorted.end(), std::back_inserter(out));
  return out;
}

int outside_count(const Monomial& m, int window) {
  int n = 0;
  for (int x : m.plus()) n += std::abs(x) > window;
  for (int x : m.minus()) n += std::abs(x) > window;
  return n;
}

}  // namespace

Monomial::Monomial(std::vector<int> plus, std::vector<int> minus) : plus_(std::move(plus)), minus_(std::move(minus)) {
  if (plus_.size() != minus_.size() || plus_.empty()) {
    throw std::invalid_argument("monomial needs equally many (>= 1) unbarred and barred indices");
  }
  for (int x : plus_) {
    if (x == 0) throw std::invalid_argument("monomial index 0 is excluded");
  }
  for (int x : minus_) {
    if (x == 0) throw std::invalid_argument("monomial index 0 is excluded");
  }
  std::sort(plus_.begin(), plus_.end());
  std::sort(minus_.begin(), minus_.end());
}

long Monomial::momentum() const {
  long s = 0;
  for (int x : plus_) s += x;
  for (int x : minus_) s -= x;
  return s;
}

long Monomial::square_divisor() const {
  long s = 0;
  for (int x : plus_) s += long(x) * x;
  for (int x : minus_) s -= long(x) * x;
  return s;
}

int Monomial::max_abs() const {
  int m = 0;
  for (int x : plus_) m = std::max(m, std::abs(x));
  for (int x : minus_) m = std::max(m, std::abs(x));
  return m;
}

long Monomial::orderings() const { return multiset_permutations(plus_) * multiset_permutations(minus_); }

std::vector<int> Monomial::interleaved() const {
  std::vector<int> out;
  out.reserve(plus_.size() * 2);
  for (std::size_t i = 0; i < plus_.size(); ++i) {
    out.push_back(plus_[i]);
    out.push_back(minus_[i]);
  }
  return out;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < plus_.size(); ++i) os << (i ? "," : "") << plus_[i];
  os << "|";
  for (std::size_t i = 0; i < minus_.size(); ++i) os << (i ? "," : "") << minus_[i];
  os << "}";
  return os.str();
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](int x) { h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (int x : m.plus()) mix(x);
  mix(0);
  for (int x : m.minus()) mix(x);
  return h;
}

bool is_normal_form(const Monomial& m) { return m.plus() == m.minus(); }

IndexTuple::IndexTuple(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() % 2 != 0) throw std::invalid_argument("index tuple must have even length");
  for (int x : entries_) {
    if (x == 0) throw std::invalid_argument("index tuple entry 0 is excluded");
  }
}

long IndexTuple::momentum() const {
  long s = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * long(entries_[i]);
  return s;
}

long IndexTuple::square_divisor() const {
  long s = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * long(entries_[i]) * entries_[i];
  return s;
}

std::vector<long> IndexTuple::rearranged() const {
  std::vector<long> out;
  out.reserve(entries_.size());
  for (int x : entries_) out.push_back(std::labs(x));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Monomial IndexTuple::monomial() const {
  std::vector<int> plus, minus;
  for (std::size_t i = 0; i < entries_.size(); ++i) (i % 2 == 0 ? plus : minus).push_back(entries_[i]);
  return Monomial(std::move(plus), std::move(minus));
}

PolyHamiltonian::PolyHamiltonian(int truncation) : m_(truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
}

void PolyHamiltonian::add_term(const Monomial& m, const ExactCoeff& c) {
  if (m.max_abs() > m_) {
    throw std::out_of_range("monomial " + m.to_string() + " exceeds truncation " + std::to_string(m_));
  }
  if (c.is_zero()) return;
  auto& terms = graded_[m.degree()];
  auto it = terms.find(m);
  if (it == terms.end()) {
    terms.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) {
    terms.erase(it);
    if (terms.empty()) graded_.erase(m.degree());
  }
}

ExactCoeff PolyHamiltonian::coefficient(const Monomial& m) const {
  const auto g = graded_.find(m.degree());
  if (g == graded_.end()) return {};
  const auto it = g->second.find(m);
  return it == g->second.end() ? ExactCoeff{} : it->second;
}

std::vector<int> PolyHamiltonian::degrees() const {
  std::vector<int> out;
  for (const auto& [d, terms] : graded_) out.push_back(d);
  return out;
}

int PolyHamiltonian::homogeneous_degree() const {
  if (graded_.empty()) return 0;
  if (graded_.size() != 1) throw std::invalid_argument("polynomial is not homogeneous");
  return graded_.begin()->first;
}

PolyHamiltonian PolyHamiltonian::homogeneous_part(int degree) const {
  PolyHamiltonian out(m_);
  if (const auto g = graded_.find(degree); g != graded_.end()) out.graded_.emplace(degree, g->second);
  return out;
}

std::size_t PolyHamiltonian::size() const {
  std::size_t n = 0;
  for (const auto& [d, terms] : graded_) n += terms.size();
  return n;
}

bool PolyHamiltonian::is_real_valued() const {
  for (const auto& [d, terms] : graded_) {
    for (const auto& [m, c] : terms) {
      if (!(coefficient(m.conj()) == c.conj())) return false;
    }
  }
  return true;
}

bool PolyHamiltonian::all_zero_momentum() const {
  for (const auto& [d, terms] : graded_) {
    for (const auto& [m, c] : terms) {
      if (m.momentum() != 0) return false;
    }
  }
  return true;
}

void PolyHamiltonian::for_each_term(const std::function<void(const Monomial&, const ExactCoeff&)>& fn) const {
  for (const auto& [d, terms] : graded_) {
    for (const auto& [m, c] : terms) fn(m, c);
  }
}

PolyHamiltonian PolyHamiltonian::restricted(int window) const {
  PolyHamiltonian out(window);
  for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    if (m.max_abs() <= window) out.graded_[m.degree()].emplace(m, c);
  });
  return out;
}

PolyHamiltonian PolyHamiltonian::filtered(
    const std::function<bool(const Monomial&, const ExactCoeff&)>& keep) const {
  PolyHamiltonian out(m_);
  for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    if (keep(m, c)) out.graded_[m.degree()].emplace(m, c);
  });
  return out;
}

void PolyHamiltonian::check_same_truncation(const PolyHamiltonian& other) const {
  if (other.m_ != m_) {
    throw std::invalid_argument("truncation mismatch: " + std::to_string(m_) + " vs " + std::to_string(other.m_));
  }
}

PolyHamiltonian& PolyHamiltonian::operator+=(const PolyHamiltonian& other) {
  check_same_truncation(other);
  other.for_each_term([this](const Monomial& m, const ExactCoeff& c) { add_term(m, c); });
  return *this;
}

PolyHamiltonian& PolyHamiltonian::operator-=(const PolyHamiltonian& other) {
  check_same_truncation(other);
  other.for_each_term([this](const Monomial& m, const ExactCoeff& c) { add_term(m, -c); });
  return *this;
}

PolyHamiltonian& PolyHamiltonian::operator*=(const ExactCoeff& scale) {
  if (scale.is_zero()) {
    graded_.clear();
    return *this;
  }
  for (auto& [d, terms] : graded_) {
    for (auto& [m, c] : terms) c = c * scale;
  }
  return *this;
}

bool operator==(const PolyHamiltonian& a, const PolyHamiltonian& b) {
  return a.m_ == b.m_ && a.graded_ == b.graded_;
}

PolyHamiltonian bracket(const PolyHamiltonian& h, const PolyHamiltonian& f, std::optional<int> window, int jobs) {
  if (h.truncation() != f.truncation()) {
    throw std::invalid_argument("bracket of polynomials with different truncations");
  }
  const int w = window.value_or(h.truncation());
  if (w < 1 || w > h.truncation()) throw std::invalid_argument("bracket window must lie in [1, M]");

  struct Entry {
    const Monomial* mono;
    const ExactCoeff* coeff;
    int outside;
  };
  // A term can reach the window only if at most one of its indices lies
  // outside it, and then the contraction has to consume exactly that index.
  std::vector<Entry> hs, fs;
  h.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    const int out = outside_count(m, w);
    if (out <= 1) hs.push_back({&m, &c, out});
  });
  f.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    const int out = outside_count(m, w);
    if (out <= 1) fs.push_back({&m, &c, out});
  });

  struct Ref {
    std::size_t idx;
    int count;
  };
  std::unordered_map<int, std::vector<Ref>> f_by_plus, f_by_minus;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (int a : distinct(fs[i].mono->plus())) f_by_plus[a].push_back({i, count_of(fs[i].mono->plus(), a)});
    for (int a : distinct(fs[i].mono->minus())) f_by_minus[a].push_back({i, count_of(fs[i].mono->minus(), a)});
  }

  using Accum = std::unordered_map<Monomial, ExactCoeff, MonomialHash>;
  const int chunks = std::max(1, std::min<int>(resolve_jobs(jobs), static_cast<int>(hs.size())));
  std::vector<Accum> partial(static_cast<std::size_t>(chunks));

  parallel_chunks(hs.size(), chunks, [&](int chunk, std::size_t begin, std::size_t end) {
    Accum& acc = partial[static_cast<std::size_t>(chunk)];
    for (std::size_t i = begin; i < end; ++i) {
      const Entry& he = hs[i];
      const auto& hp = he.mono->plus();
      const auto& hm = he.mono->minus();
      // -i a (dH/dq_a)(dF/dconj q_a)
      for (int a : distinct(hp)) {
        const int need = std::abs(a) > w ? 1 : 0;
        if (he.outside != need) continue;
        const auto it = f_by_minus.find(a);
        if (it == f_by_minus.end()) continue;
        const int ca = count_of(hp, a);
        const auto hp_rest = without_one(hp, a);
        for (const Ref& ref : it->second) {
          const Entry& fe = fs[ref.idx];
          if (fe.outside != need) continue;
          Monomial out(merged(hp_rest, fe.mono->plus()), merged(hm, without_one(fe.mono->minus(), a)));
          ExactCoeff c = ((*he.coeff) * (*fe.coeff)).times_i() * Rational(-long(a) * ca * ref.count);
          acc[std::move(out)] += c;
        }
      }
      // +i a (dH/dconj q_a)(dF/dq_a)
      for (int a : distinct(hm)) {
        const int need = std::abs(a) > w ? 1 : 0;
        if (he.outside != need) continue;
        const auto it = f_by_plus.find(a);
        if (it == f_by_plus.end()) continue;
        const int ca = count_of(hm, a);
        const auto hm_rest = without_one(hm, a);
        for (const Ref& ref : it->second) {
          const Entry& fe = fs[ref.idx];
          if (fe.outside != need) continue;
          Monomial out(merged(hp, without_one(fe.mono->plus(), a)), merged(hm_rest, fe.mono->minus()));
          ExactCoeff c = ((*he.coeff) * (*fe.coeff)).times_i() * Rational(long(a) * ca * ref.count);
          acc[std::move(out)] += c;
        }
      }
    }
  });

  PolyHamiltonian result(w);
  for (const auto& acc : partial) {
    for (const auto& [m, c] : acc) result.add_term(m, c);
  }
  return result;
}

std::pair<PolyHamiltonian, PolyHamiltonian> split_normal(const PolyHamiltonian& h) {
  return {h.filtered([](const Monomial& m, const ExactCoeff&) { return is_normal_form(m); }),
          h.filtered([](const Monomial& m, const ExactCoeff&) { return !is_normal_form(m); })};
}

PolyHamiltonian build_lambda(int truncation) {
  PolyHamiltonian p(truncation);
  for (int j = -truncation; j <= truncation; ++j) {
    if (j != 0) p.add_term(Monomial({j}, {j}), ExactCoeff::real(j));
  }
  return p;
}

PolyHamiltonian build_mass(int truncation) {
  PolyHamiltonian p(truncation);
  for (int j = -truncation; j <= truncation; ++j) {
    if (j != 0) p.add_term(Monomial({j}, {j}), ExactCoeff::real(1));
  }
  return p;
}

PolyHamiltonian build_sobolev_weight(int truncation, int s) {
  if (s < 0) throw std::invalid_argument("Sobolev index must be nonnegative");
  PolyHamiltonian p(truncation);
  for (int j = -truncation; j <= truncation; ++j) {
    if (j == 0) continue;
    BigInt w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(std::abs(j)), static_cast<unsigned long>(2 * s));
    p.add_term(Monomial({j}, {j}), ExactCoeff::real(Rational(w)));
  }
  return p;
}

PolyHamiltonian build_G(int truncation) {
  std::map<Monomial, long> counts;
  const int m = truncation;
  for (int j = -m; j <= m; ++j) {
    if (j == 0) continue;
    for (int k = -m; k <= m; ++k) {
      if (k == 0) continue;
      for (int l = -m; l <= m; ++l) {
        const int mm = j - k + l;
        if (l == 0 || mm == 0 || std::abs(mm) > m) continue;
        ++counts[Monomial({j, l}, {k, mm})];
      }
    }
  }
  PolyHamiltonian p(truncation);
  for (const auto& [mono, n] : counts) p.add_term(mono, ExactCoeff::real(make_rational(n, 4), 1));
  return p;
}

PolyHamiltonian build_B(int truncation) {
  PolyHamiltonian p(truncation);
  const int m = truncation;
  for (int j = -m; j <= m; ++j) {
    if (j == 0) continue;
    p.add_term(Monomial({j, j}, {j, j}), ExactCoeff::real(make_rational(-1, 4), 1));
    for (int k = -m; k <= m; ++k) {
      if (k == 0) continue;
      p.add_term(Monomial({j, k}, {j, k}), ExactCoeff::real(make_rational(1, 2), 1));
    }
  }
  return p;
}

std::string dump_poly_json(const PolyHamiltonian& p, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  p.for_each_term([&](const Monomial& m, const ExactCoeff& c) {
    arr.push_back({{"plus", m.plus()},
                   {"minus", m.minus()},
                   {"re", to_string(c.re())},
                   {"im", to_string(c.im())},
                   {"pi_power", c.pi_power()}});
  });
  return arr.dump(indent);
}

PolyHamiltonian load_poly_json(const std::string& text, std::optional<int> truncation) {
  const auto doc = nlohmann::json::parse(text);
  const auto& entries = doc.is_object() && doc.contains("data") ? doc.at("data") : doc;
  if (!entries.is_array()) throw std::invalid_argument("polynomial JSON must be a list of terms");
  std::vector<std::pair<Monomial, ExactCoeff>> terms;
  int bound = 1;
  for (const auto& e : entries) {
    Monomial m(e.at("plus").get<std::vector<int>>(), e.at("minus").get<std::vector<int>>());
    ExactCoeff c(parse_rational(e.at("re").get<std::string>()), parse_rational(e.at("im").get<std::string>()),
                 e.at("pi_power").get<int>());
    bound = std::max(bound, m.max_abs());
    terms.emplace_back(std::move(m), std::move(c));
  }
  PolyHamiltonian p(truncation.value_or(bound));
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

}  // namespace nflab
