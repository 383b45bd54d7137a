#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qsp/matrix.hpp"
#include "qsp/rootdata.hpp"
#include "qsp/scalar.hpp"

namespace qsp {

struct QspLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Letter families. KK = coideal K_i; KA/KB = the two Cartan families of the
// Drinfeld double (K-tilde and K-tilde-prime).
enum class AtomKind : uint8_t { B, E, F, Y, KMono };
enum class KFam : uint8_t { KK, KA, KB };

// (family, index) -> exponent, sorted, exponents nonzero.
struct KMono {
  std::vector<std::tuple<KFam, int, int>> e;
  bool empty() const { return e.empty(); }
  void add(KFam f, int idx, int exp);
  KMono operator*(const KMono& o) const;
  KMono inverse() const;
  auto operator<=>(const KMono&) const = default;
};

struct Atom {
  AtomKind kind;
  int index = 0;  // for B/E/F/Y
  KMono k;        // for KMono
  auto operator<=>(const Atom&) const = default;

  static Atom B(int i) { return {AtomKind::B, i, {}}; }
  static Atom E(int i) { return {AtomKind::E, i, {}}; }
  static Atom F(int i) { return {AtomKind::F, i, {}}; }
  static Atom Y(int i) { return {AtomKind::Y, i, {}}; }
  static Atom K(KFam f, int i, int exp = 1) {
    Atom a{AtomKind::KMono, 0, {}};
    a.k.add(f, i, exp);
    return a;
  }
  static Atom Kmono(KMono m) { return {AtomKind::KMono, 0, std::move(m)}; }
};

using Word = std::vector<Atom>;

// Noncommutative polynomial: finite Scalar-combination of words. Adjacent
// K-monomial atoms merge (they commute pairwise); no other symbolic
// commutation is performed -- K's q-commute past letters only when a word
// is evaluated on a representation.
class NCPoly {
 public:
  NCPoly() = default;
  static NCPoly atom(const Atom& a) { return word({a}); }
  static NCPoly word(Word w, Scalar c = Scalar(1));
  static NCPoly constant(const Scalar& c) { return word({}, c); }

  bool isZero() const { return t_.empty(); }
  size_t termCount() const { return t_.size(); }
  const std::map<Word, Scalar>& terms() const { return t_; }

  NCPoly operator+(const NCPoly& o) const;
  NCPoly operator-(const NCPoly& o) const;
  NCPoly operator-() const;
  NCPoly operator*(const NCPoly& o) const;
  NCPoly operator*(const Scalar& c) const;
  bool operator==(const NCPoly& o) const { return t_ == o.t_; }

  // Structurally equal words only; the sound equality test for words in a
  // represented algebra is matrix evaluation.
  void addTerm(Word w, const Scalar& c);

  std::string str() const;

 private:
  std::map<Word, Scalar> t_;
};

inline NCPoly qbracket(const NCPoly& x, const NCPoly& y, const Scalar& c) {
  return x * y - y * x * c;
}

// P(y_1..y_k): right-nested q-brackets; P'(y_1..y_k): left-nested.
NCPoly iterP(const std::vector<NCPoly>& ys);
NCPoly iterPprime(const std::vector<NCPoly>& ys);

// bold-P(X, Y, Z | mu) = [X,[Y,Z]_q]_q - q K_mu Z, mu a list of coideal
// K-indices (the index of X, or the index sum for composite X).
NCPoly boldP(const NCPoly& x, const NCPoly& y, const NCPoly& z,
             const std::vector<int>& mu);

// ---------------------------------------------------------------------------
// Partial commutation (trace monoid) machinery for the P/P' lemmas.

struct CommutationSpec {
  std::set<std::pair<Atom, Atom>> pairs;  // stored with lhs < rhs
  void declare(const Atom& a, const Atom& b);
  bool commute(const Atom& a, const Atom& b) const;
  // y_m, y_n commute for |m - n| > 1 (indices clamped to [lo, hi]).
  static CommutationSpec almostCommuting(int lo, int hi);
};

// Lexicographically least representative of the trace-equivalence class.
Word pcCanonicalWord(const Word& w, const CommutationSpec& comm);
NCPoly pcCanonical(const NCPoly& p, const CommutationSpec& comm);
bool pcEqual(const NCPoly& p, const NCPoly& r, const CommutationSpec& comm);

// ---------------------------------------------------------------------------
// Bracket programs.

struct BProg;
using BProgPtr = std::shared_ptr<const BProg>;

struct BProg {
  enum Kind { Leaf, Scale, Sum, Mul, QBr, PFold, PPrimeFold, BoldP } kind;
  Atom leaf{};                  // Leaf
  Scalar scalar;                // Scale, QBr (the bracket constant)
  std::vector<int> mu;          // BoldP
  std::vector<BProgPtr> child;  // all composite kinds

  static BProgPtr leafAtom(const Atom& a);
  static BProgPtr scale(const Scalar& c, BProgPtr p);
  static BProgPtr sum(std::vector<BProgPtr> ps);
  static BProgPtr mul(std::vector<BProgPtr> ps);
  static BProgPtr qbr(const Scalar& c, BProgPtr x, BProgPtr y);
  static BProgPtr pfold(std::vector<BProgPtr> ys);
  static BProgPtr ppfold(std::vector<BProgPtr> ys);
  static BProgPtr boldp(std::vector<int> mu, BProgPtr x, BProgPtr y, BProgPtr z);

  std::string sexpr() const;
};

NCPoly evalProgramNC(const BProgPtr& p);

// Generic evaluation: `img` supplies the image of each atom in a matrix
// algebra of dimension `dim`.
Mat evalProgramMat(const BProgPtr& p, int dim,
                   const std::function<Mat(const Atom&)>& img);
Mat evalNCPolyMat(const NCPoly& p, int dim,
                  const std::function<Mat(const Atom&)>& img);

enum class ProgKey { AMinus1, TthetaInvB0, TomegaPrimeF, TomegaPrimeE, TomegaPrimeB };

// The explicit nested-bracket programs: T_{varpi'_i}(B_i) (TomegaPrimeB),
// the A_{i,-1} normalization of it (AMinus1), T^{-1}_{theta_n}(B_0)
// (TthetaInvB0, N even), and the T_{omega'_i}(F_i) / T_{omega'_i}(E_i)
// polynomials in the Drinfeld double.
BProgPtr bracketProgram(const SatakeDiagram& d, ProgKey key, int i = 0);

// ---------------------------------------------------------------------------
// Relative braid group substitution.

class RelativeBraid {
 public:
  explicit RelativeBraid(const SatakeDiagram& d, size_t termCap = 20000)
      : d_(&d), cap_(termCap) {}

  // Image of a single generator T_i (i in I_tau) on a coideal letter.
  NCPoly genImageB(int i, int j) const;      // T_i(B_j)
  NCPoly genImageK(int i, int j) const;      // T_i(K_j)
  NCPoly applyGen(int i, const NCPoly& p) const;
  NCPoly applyAut(int p, const NCPoly& x) const;
  NCPoly applyGenInverse(int i, const NCPoly& p) const;
  // Closed-form inverse image of a single letter, when one exists (the
  // sigma-conjugate); nullopt for the doubly-adjacent a = -1 subcase, whose
  // inverse is characterized only implicitly.
  std::optional<NCPoly> genImageBInverse(int i, int j) const;
  // T_w^power(p) for a relative word w (power in {-2,..,2} at desk scale).
  NCPoly applyWordPower(const RelWeylWord& w, int power, const NCPoly& p) const;

  // The anti-automorphism sigma: reverses words, B_i -> B_i, K_i -> K_tau(i).
  NCPoly sigma(const NCPoly& p) const;

 private:
  NCPoly substitute(const NCPoly& p,
                    const std::function<NCPoly(const Atom&)>& img) const;
  const SatakeDiagram* d_;
  size_t cap_;
};

// Moves every coideal K-monomial to the end of each word using the exact
// commutation K_j B_l = q^(a_tau(j),l - a_jl) B_l K_j; keeps substitution
// intermediates inside the term cap by merging equal words.
NCPoly normalizeKTail(const SatakeDiagram& d, const NCPoly& p);

}  // namespace qsp
