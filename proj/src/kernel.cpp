#include "sgforest/kernel.hpp"

#include <string>

#include "sgforest/errors.hpp"

namespace sgforest {

namespace {

void check_genus_bound(int genus_bound) {
  if (genus_bound < 1 || genus_bound > kMaxGenusBound) {
    throw ConfigError("genus bound must be in [1, " + std::to_string(kMaxGenusBound) + "], got " +
                      std::to_string(genus_bound));
  }
}

struct Shape {
  int m;
  int frobenius;
  int genus;
};

Shape shape_of(const Membership& mem) {
  Shape sh{0, -1, 0};
  for (int x = 1; x <= mem.bound(); ++x) {
    if (mem.contains(x)) {
      if (sh.m == 0) sh.m = x;
    } else {
      sh.frobenius = x;
      ++sh.genus;
    }
  }
  return sh;
}

}  // namespace

Membership::Membership(int bound) : bound_(bound), bits_(Bitmap::all_ones()) {
  if (bound < 1 || bound >= Bitmap::kBits) {
    throw ConfigError("membership bound out of range: " + std::to_string(bound));
  }
}

void Membership::remove(int x) {
  if (x < 1 || x > bound_) throw ContractViolation("cannot remove " + std::to_string(x) + " from membership");
  bits_.reset(x);
}

void Membership::add(int x) {
  if (x < 0 || x > bound_) throw ContractViolation("cannot add " + std::to_string(x) + " to membership");
  bits_.set(x);
}

SemigroupState root(int genus_bound) {
  check_genus_bound(genus_bound);
  SemigroupState s;
  s.membership_ = Bitmap::all_ones();
  s.right_primitives_.set(1);
  s.genus_bound_ = static_cast<std::int16_t>(genus_bound);
  s.m_ = 1;
  s.frobenius_ = -1;
  s.genus_ = 0;
  s.left_primitives_ = 0;
  s.right_count_ = 1;
  return s;
}

SemigroupState SemigroupState::from_fields(const Fields& f) {
  check_genus_bound(f.genus_bound);
  SemigroupState s;
  s.genus_bound_ = static_cast<std::int16_t>(f.genus_bound);
  s.membership_ = f.membership;
  s.m_ = static_cast<std::int16_t>(f.m);
  s.frobenius_ = static_cast<std::int16_t>(f.frobenius);
  s.genus_ = static_cast<std::int16_t>(f.genus);
  s.left_primitives_ = static_cast<std::int16_t>(f.left_primitives);
  s.right_primitives_ = f.right_primitives;
  s.right_count_ = static_cast<std::int16_t>(f.right_primitives.count());
  return s;
}

Membership SemigroupState::membership() const {
  Membership mem(bound());
  for (int x = 1; x <= frobenius_; ++x) {
    if (!membership_.test(x)) mem.remove(x);
  }
  return mem;
}

std::vector<int> SemigroupState::right_primitives() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(right_count_));
  right_primitives_.for_each([&](int x) { out.push_back(x); });
  return out;
}

GapSet SemigroupState::gaps() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(genus_));
  for (int x = 1; x <= frobenius_; ++x) {
    if (!membership_.test(x)) out.push_back(x);
  }
  return GapSet(std::move(out));
}

SemigroupState child(const SemigroupState& s, int a) {
  if (a < 0 || a >= Bitmap::kBits || !s.right_primitive_bits().test(a)) {
    throw ContractViolation(std::to_string(a) + " is not a right primitive of the parent");
  }
  if (s.genus() + 1 > s.genus_bound()) {
    throw OutOfBoundError("child would have genus " + std::to_string(s.genus() + 1) + " > bound " +
                          std::to_string(s.genus_bound()));
  }
  SemigroupState out;
  out.assign_child_unchecked(s, a);
  return out;
}

std::vector<SemigroupState> children(const SemigroupState& s) {
  std::vector<SemigroupState> out;
  out.reserve(static_cast<std::size_t>(s.right_primitive_count()));
  s.for_each_right_primitive([&](int a) { out.push_back(child(s, a)); });
  return out;
}

InvariantRecord invariants(const SemigroupState& s) {
  InvariantRecord r;
  r.m = s.multiplicity();
  r.e_l = s.left_primitive_count();
  r.e_r = s.right_primitive_count();
  r.e = r.e_l + r.e_r;
  r.frobenius = s.frobenius();
  r.conductor = s.conductor();
  r.genus = s.genus();
  r.left_size = r.conductor - r.genus;
  r.wilf = std::int64_t{r.e} * r.left_size - r.conductor;
  return r;
}

EuclidSplit euclid_split(const SemigroupState& s) {
  const int m = s.multiplicity();
  const int c = s.conductor();
  const int q = (c + m - 1) / m;
  const int rho = q * m - c;
  return EuclidSplit{q, rho, rho == 0};
}

void check_closure(const Membership& mem) {
  if (!mem.contains(0)) throw ValidationError("0 must belong to the semigroup");
  const int bound = mem.bound();
  for (int x = 1; x <= bound; ++x) {
    if (!mem.contains(x)) continue;
    for (int y = x; x + y <= bound; ++y) {
      if (mem.contains(y) && !mem.contains(x + y)) {
        throw ValidationError("complement not closed under addition: " + std::to_string(x) + " + " +
                              std::to_string(y) + " = " + std::to_string(x + y) + " is a gap");
      }
    }
  }
}

std::vector<int> primitives_by_sieve(const Membership& mem) {
  check_closure(mem);
  const Shape sh = shape_of(mem);
  if (sh.m == 0) throw ValidationError("membership has no nonzero element within its bound");
  const int c = sh.frobenius + 1;
  const int limit = (c > sh.m ? c : sh.m) + sh.m - 1;
  if (limit > mem.bound()) throw ValidationError("primitives exceed the membership bound");

  // composite[x] is set once x is seen as a sum of two nonzero members.
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (int s = sh.m; 2 * s <= limit; ++s) {
    if (!mem.contains(s)) continue;
    for (int t = s; s + t <= limit; ++t) {
      if (mem.contains(t)) composite[static_cast<std::size_t>(s + t)] = true;
    }
  }
  std::vector<int> out;
  for (int x = sh.m; x <= limit; ++x) {
    if (mem.contains(x) && !composite[static_cast<std::size_t>(x)]) out.push_back(x);
  }
  return out;
}

SemigroupState from_gaps(const GapSet& gaps, int genus_bound) {
  check_genus_bound(genus_bound);
  if (static_cast<int>(gaps.size()) > genus_bound) {
    throw ConfigError("gap set of size " + std::to_string(gaps.size()) + " exceeds genus bound " +
                      std::to_string(genus_bound));
  }
  Membership mem(3 * genus_bound + 1);
  for (int x : gaps.values()) {
    if (x > mem.bound()) throw ValidationError("gap " + std::to_string(x) + " lies beyond the bound");
    mem.remove(x);
  }
  const auto primitives = primitives_by_sieve(mem);
  const Shape sh = shape_of(mem);

  SemigroupState::Fields f{genus_bound, mem.bits(), sh.m, sh.frobenius, sh.genus, 0, Bitmap{}};
  for (int p : primitives) {
    if (p < sh.frobenius) {
      ++f.left_primitives;
    } else {
      f.right_primitives.set(p);
    }
  }
  return SemigroupState::from_fields(f);
}

void validate(const SemigroupState& s) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("state " + s.gaps().to_string() + ": " + what);
  };
  const Bitmap& bits = s.membership_bits();
  if (!bits.test(0)) fail("0 not a member");
  for (int x = s.conductor(); x < Bitmap::kBits; ++x) {
    if (!bits.test(x)) fail("non-member " + std::to_string(x) + " above the Frobenius number");
  }
  const Membership mem = s.membership();
  const Shape sh = shape_of(mem);
  if (sh.frobenius != s.frobenius()) fail("frobenius mismatch");
  if (sh.genus != s.genus()) fail("genus mismatch");
  if (sh.m != s.multiplicity()) fail("multiplicity mismatch");
  if (s.genus() > s.genus_bound()) fail("genus exceeds bound");
  if (s.genus() > 0) {
    // Classical bounds m <= g + 1 and c <= 2g keep every primitive below 3G+1.
    if (s.multiplicity() > s.genus() + 1) fail("multiplicity exceeds g + 1");
    if (s.conductor() > 2 * s.genus()) fail("conductor exceeds 2g");
  }
  const auto primitives = primitives_by_sieve(mem);
  int left = 0;
  std::vector<int> right;
  for (int p : primitives) {
    if (p < s.frobenius()) {
      ++left;
    } else {
      right.push_back(p);
    }
  }
  if (left != s.left_primitive_count()) fail("left primitive count mismatch");
  if (right != s.right_primitives()) fail("right primitive list mismatch");
  if (s.right_primitive_count() != static_cast<int>(right.size())) fail("right primitive count mismatch");
  if (s.genus() > 0) {
    for (int p : right) {
      if (p < s.conductor() || p > s.conductor() + s.multiplicity() - 1) fail("right primitive outside [c, c+m-1]");
    }
  }
}

}  // namespace sgforest
