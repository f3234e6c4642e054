#include "siftcat/fincat.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "siftcat/union_find.hpp"

namespace siftcat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingComposite: return "MissingComposite";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::UnitLawViolation: return "UnitLawViolation";
    case ErrorKind::DanglingIdentifier: return "DanglingIdentifier";
    case ErrorKind::DuplicateIdentifier: return "DuplicateIdentifier";
    case ErrorKind::NotFunctorial: return "NotFunctorial";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::NotReflexive: return "NotReflexive";
    case ErrorKind::NotFullyFaithful: return "NotFullyFaithful";
    case ErrorKind::NotSifted: return "NotSifted";
    case ErrorKind::PullbackAbsent: return "PullbackAbsent";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::SectionMissing: return "SectionMissing";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::CheckFailed: return "CheckFailed";
  }
  return "Unknown";
}

std::string identity_name(std::string_view object) {
  return "id_" + std::string(object);
}

// ---------------------------------------------------------------------------
// FinCat

MorId FinCat::compose(MorId second, MorId first) const {
  if (!composable(second, first))
    throw Error(ErrorKind::NotComposable,
                "cannot compose " + name(second) + " after " + name(first));
  return compose_unchecked(second, first);
}

std::optional<MorId> FinCat::try_compose(MorId second, MorId first) const {
  if (!composable(second, first)) return std::nullopt;
  return compose_unchecked(second, first);
}

std::optional<ObjId> FinCat::find_object(std::string_view n) const {
  auto it = object_index_.find(std::string(n));
  if (it == object_index_.end()) return std::nullopt;
  return ObjId(it->second);
}

std::optional<MorId> FinCat::find_morphism(std::string_view n) const {
  auto it = morphism_index_.find(std::string(n));
  if (it == morphism_index_.end()) return std::nullopt;
  return MorId(it->second);
}

ObjId FinCat::object(std::string_view n) const {
  if (auto x = find_object(n)) return *x;
  throw Error(ErrorKind::UnknownObject, "no object named '" + std::string(n) + "'");
}

MorId FinCat::morphism(std::string_view n) const {
  if (auto f = find_morphism(n)) return *f;
  throw Error(ErrorKind::DanglingIdentifier, "no morphism named '" + std::string(n) + "'");
}

bool FinCat::is_preorder() const {
  for (const auto& h : homs_)
    if (h.size() > 1) return false;
  return true;
}

void FinCat::index() {
  const std::size_t n = num_objects();
  const std::size_t m = num_morphisms();

  objects_sorted_.clear();
  for (std::size_t i = 0; i < n; ++i) objects_sorted_.emplace_back(i);
  std::sort(objects_sorted_.begin(), objects_sorted_.end(),
            [&](ObjId a, ObjId b) { return name(a) < name(b); });
  object_rank_.assign(n, 0);
  for (std::size_t r = 0; r < n; ++r) object_rank_[objects_sorted_[r].index()] = r;

  morphisms_sorted_.clear();
  for (std::size_t i = 0; i < m; ++i) morphisms_sorted_.emplace_back(i);
  std::sort(morphisms_sorted_.begin(), morphisms_sorted_.end(),
            [&](MorId a, MorId b) { return name(a) < name(b); });
  morphism_rank_.assign(m, 0);
  for (std::size_t r = 0; r < m; ++r) morphism_rank_[morphisms_sorted_[r].index()] = r;

  homs_.assign(n * n, {});
  out_.assign(n, {});
  in_.assign(n, {});
  for (MorId f : morphisms_sorted_) {
    homs_[src(f).index() * n + dst(f).index()].push_back(f);
    out_[src(f).index()].push_back(f);
    in_[dst(f).index()].push_back(f);
  }
}

namespace {

std::map<std::string, std::pair<std::string, std::string>> signature(const FinCat& c) {
  std::map<std::string, std::pair<std::string, std::string>> sig;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    sig[c.name(f)] = {c.name(c.src(f)), c.name(c.dst(f))};
  }
  return sig;
}

}  // namespace

bool operator==(const FinCat& a, const FinCat& b) {
  if (a.object_names_ != b.object_names_) return false;
  if (a.num_morphisms() != b.num_morphisms()) return false;
  if (signature(a) != signature(b)) return false;
  for (std::size_t i = 0; i < a.num_morphisms(); ++i) {
    for (std::size_t j = 0; j < a.num_morphisms(); ++j) {
      MorId g(i), f(j);
      if (!a.composable(g, f)) continue;
      MorId bg = b.morphism(a.name(g));
      MorId bf = b.morphism(a.name(f));
      if (a.name(a.compose_unchecked(g, f)) != b.name(b.compose_unchecked(bg, bf)))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// CategoryBuilder

ObjId CategoryBuilder::add_object(std::string name) {
  if (cat_.object_index_.count(name))
    throw Error(ErrorKind::DuplicateIdentifier, "duplicate object '" + name + "'");
  std::string id_name = identity_name(name);
  if (cat_.morphism_index_.count(id_name))
    throw Error(ErrorKind::DuplicateIdentifier,
                "morphism '" + id_name + "' collides with the reserved identity name");
  ObjId x(cat_.object_names_.size());
  cat_.object_index_.emplace(name, x.value);
  cat_.object_names_.push_back(std::move(name));
  MorId id(cat_.morphism_names_.size());
  cat_.morphism_index_.emplace(id_name, id.value);
  cat_.morphism_names_.push_back(std::move(id_name));
  cat_.src_.push_back(x);
  cat_.dst_.push_back(x);
  cat_.identity_.push_back(id);
  return x;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId src, ObjId dst) {
  if (cat_.morphism_index_.count(name))
    throw Error(ErrorKind::DuplicateIdentifier, "duplicate morphism '" + name + "'");
  if (!src.valid() || !dst.valid() || src.index() >= num_objects() ||
      dst.index() >= num_objects())
    throw Error(ErrorKind::DanglingIdentifier, "morphism '" + name + "' has unknown endpoints");
  MorId f(cat_.morphism_names_.size());
  cat_.morphism_index_.emplace(name, f.value);
  cat_.morphism_names_.push_back(std::move(name));
  cat_.src_.push_back(src);
  cat_.dst_.push_back(dst);
  return f;
}

void CategoryBuilder::set_composite(MorId second, MorId first, MorId result) {
  auto key = std::make_pair(second.value, first.value);
  auto [it, inserted] = composites_.emplace(key, result.value);
  if (!inserted && it->second != result.value)
    throw Error(ErrorKind::MissingComposite,
                "conflicting entries for compose(" + cat_.morphism_names_[second.index()] + ", " +
                    cat_.morphism_names_[first.index()] + ")");
}

std::optional<ObjId> CategoryBuilder::find_object(std::string_view name) const {
  auto it = cat_.object_index_.find(std::string(name));
  if (it == cat_.object_index_.end()) return std::nullopt;
  return ObjId(it->second);
}

std::optional<MorId> CategoryBuilder::find_morphism(std::string_view name) const {
  auto it = cat_.morphism_index_.find(std::string(name));
  if (it == cat_.morphism_index_.end()) return std::nullopt;
  return MorId(it->second);
}

FinCat CategoryBuilder::build() && {
  FinCat& c = cat_;
  const std::size_t m = c.num_morphisms();
  c.table_.assign(m * m, -1);
  auto nm = [&](int f) -> const std::string& { return c.morphism_names_[f]; };
  auto pair_str = [&](int g, int f) { return "(" + nm(g) + ", " + nm(f) + ")"; };

  for (std::size_t i = 0; i < m; ++i) {
    MorId f(i);
    c.table_[c.identity(c.dst(f)).index() * m + i] = f.value;
    c.table_[i * m + c.identity(c.src(f)).index()] = f.value;
  }

  for (const auto& [key, result] : composites_) {
    const auto [g, f] = key;
    MorId gm(g), fm(f), r(result);
    if (c.dst(fm) != c.src(gm))
      throw Error(ErrorKind::MissingComposite,
                  "compose" + pair_str(g, f) + " given for a non-composable pair");
    if (c.src(r) != c.src(fm) || c.dst(r) != c.dst(gm))
      throw Error(ErrorKind::MissingComposite,
                  "compose" + pair_str(g, f) + " = " + nm(result) + " has the wrong endpoints");
    int& slot = c.table_[g * m + f];
    if (c.is_identity(gm) || c.is_identity(fm)) {
      if (slot != result)
        throw Error(ErrorKind::UnitLawViolation,
                    "compose" + pair_str(g, f) + " = " + nm(result) + " contradicts the unit law");
      continue;
    }
    slot = result;
  }

  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      if (c.dst(MorId(f)) == c.src(MorId(g)) && c.table_[g * m + f] < 0)
        throw Error(ErrorKind::MissingComposite,
                    "no entry for compose" + pair_str(static_cast<int>(g), static_cast<int>(f)));

  c.index();

  // Associativity over composable triples h∘g∘f.
  for (std::size_t fi = 0; fi < m; ++fi) {
    MorId f(fi);
    for (MorId g : c.out(c.dst(f))) {
      MorId gf = c.compose_unchecked(g, f);
      for (MorId h : c.out(c.dst(g))) {
        if (c.compose_unchecked(h, gf) != c.compose_unchecked(c.compose_unchecked(h, g), f))
          throw Error(ErrorKind::NonAssociative, "triple (" + c.name(h) + ", " + c.name(g) +
                                                     ", " + c.name(f) + ") is not associative");
      }
    }
  }
  return std::move(c);
}

FinCat validate_category(const RawCategory& raw) {
  CategoryBuilder b;
  for (const auto& o : raw.objects) b.add_object(o);
  auto obj = [&](const std::string& n, const std::string& where) {
    if (auto x = b.find_object(n)) return *x;
    throw Error(ErrorKind::DanglingIdentifier, "unknown object '" + n + "' in " + where);
  };
  for (const auto& m : raw.morphisms)
    b.add_morphism(m.id, obj(m.src, "morphism '" + m.id + "'"),
                   obj(m.dst, "morphism '" + m.id + "'"));
  auto mor = [&](const std::string& n) {
    if (auto f = b.find_morphism(n)) return *f;
    throw Error(ErrorKind::DanglingIdentifier, "unknown morphism '" + n + "' in compose table");
  };
  for (const auto& e : raw.compose)
    b.set_composite(mor(e.second), mor(e.first), mor(e.result));
  return std::move(b).build();
}

RawCategory to_raw(const FinCat& c) {
  RawCategory raw;
  for (std::size_t i = 0; i < c.num_objects(); ++i) raw.objects.push_back(c.name(ObjId(i)));
  std::vector<MorId> proper;
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    if (c.is_identity(f)) continue;
    proper.push_back(f);
    raw.morphisms.push_back({c.name(f), c.name(c.src(f)), c.name(c.dst(f))});
  }
  for (MorId g : proper)
    for (MorId f : proper)
      if (c.composable(g, f))
        raw.compose.push_back({c.name(g), c.name(f), c.name(c.compose_unchecked(g, f))});
  return raw;
}

FinCat opposite(const FinCat& c) {
  CategoryBuilder b;
  for (std::size_t i = 0; i < c.num_objects(); ++i) b.add_object(c.name(ObjId(i)));
  std::vector<MorId> to_op(c.num_morphisms());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    if (c.is_identity(f)) {
      to_op[i] = *b.find_morphism(c.name(f));
    } else {
      to_op[i] = b.add_morphism(c.name(f), ObjId(c.dst(f).value), ObjId(c.src(f).value));
    }
  }
  for (std::size_t gi = 0; gi < c.num_morphisms(); ++gi) {
    MorId g(gi);
    if (c.is_identity(g)) continue;
    for (MorId f : c.out(c.dst(g))) {
      if (c.is_identity(f)) continue;
      // In the opposite, g∘op f = (f∘g)^op.
      b.set_composite(to_op[g.index()], to_op[f.index()],
                      to_op[c.compose_unchecked(f, g).index()]);
    }
  }
  return std::move(b).build();
}

FinCat product(const FinCat& a, const FinCat& b) {
  CategoryBuilder builder;
  const std::size_t na = a.num_objects(), nb = b.num_objects();
  const std::size_t ma = a.num_morphisms(), mb = b.num_morphisms();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      builder.add_object("(" + a.name(ObjId(i)) + "," + b.name(ObjId(j)) + ")");
  std::vector<MorId> pair(ma * mb);
  for (std::size_t f = 0; f < ma; ++f) {
    for (std::size_t g = 0; g < mb; ++g) {
      MorId fa(f), gb(g);
      ObjId s(a.src(fa).index() * nb + b.src(gb).index());
      ObjId t(a.dst(fa).index() * nb + b.dst(gb).index());
      if (a.is_identity(fa) && b.is_identity(gb)) {
        pair[f * mb + g] = *builder.find_morphism(identity_name(
            "(" + a.name(a.src(fa)) + "," + b.name(b.src(gb)) + ")"));
      } else {
        pair[f * mb + g] = builder.add_morphism("(" + a.name(fa) + "," + b.name(gb) + ")", s, t);
      }
    }
  }
  for (std::size_t f1 = 0; f1 < ma; ++f1)
    for (std::size_t g1 = 0; g1 < mb; ++g1)
      for (MorId f2 : a.out(a.dst(MorId(f1))))
        for (MorId g2 : b.out(b.dst(MorId(g1)))) {
          MorId ff = a.compose_unchecked(f2, MorId(f1));
          MorId gg = b.compose_unchecked(g2, MorId(g1));
          MorId first = pair[f1 * mb + g1];
          MorId second = pair[f2.index() * mb + g2.index()];
          builder.set_composite(second, first, pair[ff.index() * mb + gg.index()]);
        }
  return std::move(builder).build();
}

FinCat terminal_category(std::string object) {
  CategoryBuilder b;
  b.add_object(std::move(object));
  return std::move(b).build();
}

FinCat discrete_category(const std::vector<std::string>& objects) {
  CategoryBuilder b;
  for (const auto& o : objects) b.add_object(o);
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Structural predicates

bool is_connected(const FinCat& c) {
  if (c.num_objects() == 0) return false;
  UnionFind uf(c.num_objects());
  for (std::size_t i = 0; i < c.num_morphisms(); ++i) {
    MorId f(i);
    uf.unite(c.src(f).index(), c.dst(f).index());
  }
  return uf.count_classes() == 1;
}

namespace {

// Connectivity of the cospan category over (x, y) by union-find on pairs of
// legs; cell (i, j) is the cospan (out(x)[i], out(y)[j]) when the targets agree.
enum class CospanState { Empty, Connected, Disconnected };

CospanState cospan_state(const FinCat& c, ObjId x, ObjId y) {
  auto ox = c.out(x);
  auto oy = c.out(y);
  const std::size_t m = c.num_morphisms();
  std::vector<int> pos_x(m, -1), pos_y(m, -1);
  for (std::size_t i = 0; i < ox.size(); ++i) pos_x[ox[i].index()] = static_cast<int>(i);
  for (std::size_t j = 0; j < oy.size(); ++j) pos_y[oy[j].index()] = static_cast<int>(j);
  const std::size_t width = oy.size();
  UnionFind uf(ox.size() * width);
  std::size_t cells = 0;
  std::size_t first = 0;
  for (std::size_t i = 0; i < ox.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      MorId u = ox[i], v = oy[j];
      if (c.dst(u) != c.dst(v)) continue;
      if (cells++ == 0) first = i * width + j;
      for (MorId k : c.out(c.dst(u))) {
        MorId ku = c.compose_unchecked(k, u);
        MorId kv = c.compose_unchecked(k, v);
        uf.unite(i * width + j,
                 static_cast<std::size_t>(pos_x[ku.index()]) * width +
                     static_cast<std::size_t>(pos_y[kv.index()]));
      }
    }
  }
  if (cells == 0) return CospanState::Empty;
  for (std::size_t i = 0; i < ox.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      if (c.dst(ox[i]) == c.dst(oy[j]) && !uf.same(i * width + j, first))
        return CospanState::Disconnected;
  return CospanState::Connected;
}

}  // namespace

SiftedVerdict is_sifted(const FinCat& c) {
  SiftedVerdict v;
  if (c.num_objects() == 0) {
    v.failure = SiftedVerdict::Failure::Empty;
    return v;
  }
  for (ObjId x : c.objects_by_name()) {
    for (ObjId y : c.objects_by_name()) {
      auto state = cospan_state(c, x, y);
      if (state == CospanState::Connected) continue;
      v.failure = state == CospanState::Empty ? SiftedVerdict::Failure::NoCospan
                                              : SiftedVerdict::Failure::Disconnected;
      v.left = x;
      v.right = y;
      return v;
    }
  }
  // The empty-family cocone condition follows from the pair condition.
  if (!is_connected(c)) throw std::logic_error("pairwise cospan connectivity without connectivity");
  v.sifted = true;
  return v;
}

FilteredVerdict is_filtered(const FinCat& c) {
  FilteredVerdict v;
  if (c.num_objects() == 0) {
    v.failure = FilteredVerdict::Failure::Empty;
    return v;
  }
  for (ObjId x : c.objects_by_name()) {
    for (ObjId y : c.objects_by_name()) {
      bool found = false;
      for (ObjId z : c.objects_by_name())
        if (!c.hom(x, z).empty() && !c.hom(y, z).empty()) {
          found = true;
          break;
        }
      if (!found) {
        v.failure = FilteredVerdict::Failure::NoCospan;
        v.left = x;
        v.right = y;
        return v;
      }
    }
  }
  for (ObjId x : c.objects_by_name()) {
    for (ObjId y : c.objects_by_name()) {
      auto h = c.hom(x, y);
      for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) {
          bool found = false;
          for (MorId k : c.out(y))
            if (c.compose_unchecked(k, h[i]) == c.compose_unchecked(k, h[j])) {
              found = true;
              break;
            }
          if (!found) {
            v.failure = FilteredVerdict::Failure::NoCoequalizer;
            v.left = x;
            v.right = y;
            v.first = h[i];
            v.second = h[j];
            return v;
          }
        }
      }
    }
  }
  v.filtered = true;
  return v;
}

std::string describe(const FinCat& c, const SiftedVerdict& v) {
  switch (v.failure) {
    case SiftedVerdict::Failure::None: return "sifted";
    case SiftedVerdict::Failure::Empty: return "empty category";
    case SiftedVerdict::Failure::NoCospan:
      return "no cospan over (" + c.name(v.left) + ", " + c.name(v.right) + ")";
    case SiftedVerdict::Failure::Disconnected:
      return "cospans over (" + c.name(v.left) + ", " + c.name(v.right) + ") are disconnected";
  }
  return {};
}

std::string describe(const FinCat& c, const FilteredVerdict& v) {
  switch (v.failure) {
    case FilteredVerdict::Failure::None: return "filtered";
    case FilteredVerdict::Failure::Empty: return "empty category";
    case FilteredVerdict::Failure::NoCospan:
      return "no cospan over (" + c.name(v.left) + ", " + c.name(v.right) + ")";
    case FilteredVerdict::Failure::NoCoequalizer:
      return "no morphism coequalizes " + c.name(v.first) + ", " + c.name(v.second) + " : " +
             c.name(v.left) + " -> " + c.name(v.right);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Pullbacks

std::optional<PullbackSquare> chosen_pullback(const FinCat& c, MorId f, MorId g) {
  if (c.dst(f) != c.dst(g))
    throw Error(ErrorKind::NotParallel, c.name(f) + " and " + c.name(g) + " do not form a cospan");
  const ObjId x = c.src(f), y = c.src(g);
  std::vector<PullbackSquare> squares;
  for (ObjId p : c.objects_by_name())
    for (MorId a : c.hom(p, x))
      for (MorId b : c.hom(p, y))
        if (c.compose_unchecked(f, a) == c.compose_unchecked(g, b)) squares.push_back({p, a, b});
  // squares is in lexicographic order of (apex, left projection, right projection).
  for (const auto& cand : squares) {
    bool terminal = true;
    for (const auto& other : squares) {
      int mediators = 0;
      for (MorId u : c.hom(other.apex, cand.apex))
        if (c.compose_unchecked(cand.to_left, u) == other.to_left &&
            c.compose_unchecked(cand.to_right, u) == other.to_right)
          if (++mediators > 1) break;
      if (mediators != 1) {
        terminal = false;
        break;
      }
    }
    if (terminal) return cand;
  }
  return std::nullopt;
}

bool verify_pullback(const FinCat& c, MorId f, MorId g, const PullbackSquare& sq) {
  if (c.dst(f) != c.dst(g)) return false;
  if (c.src(sq.to_left) != sq.apex || c.src(sq.to_right) != sq.apex) return false;
  if (c.dst(sq.to_left) != c.src(f) || c.dst(sq.to_right) != c.src(g)) return false;
  if (c.compose(f, sq.to_left) != c.compose(g, sq.to_right)) return false;
  for (std::size_t qi = 0; qi < c.num_objects(); ++qi) {
    ObjId q(qi);
    for (MorId a : c.hom(q, c.src(f))) {
      for (MorId b : c.hom(q, c.src(g))) {
        if (c.compose(f, a) != c.compose(g, b)) continue;
        std::size_t count = 0;
        for (MorId u : c.hom(q, sq.apex))
          if (c.compose(sq.to_left, u) == a && c.compose(sq.to_right, u) == b) ++count;
        if (count != 1) return false;
      }
    }
  }
  return true;
}

std::optional<MorId> mediate(const FinCat& c, const PullbackSquare& sq, MorId a, MorId b) {
  if (c.src(a) != c.src(b)) return std::nullopt;
  for (MorId u : c.hom(c.src(a), sq.apex))
    if (c.compose_unchecked(sq.to_left, u) == a && c.compose_unchecked(sq.to_right, u) == b)
      return u;
  return std::nullopt;
}

const std::optional<PullbackSquare>& PullbackTable::get(MorId f, MorId g) {
  const long long key = static_cast<long long>(f.value) *
                            static_cast<long long>(cat_->num_morphisms()) +
                        g.value;
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, chosen_pullback(*cat_, f, g)).first->second;
}

const PullbackSquare& PullbackTable::require(MorId f, MorId g) {
  const auto& sq = get(f, g);
  if (!sq)
    throw Error(ErrorKind::PullbackAbsent,
                "no pullback of " + cat_->name(f) + " and " + cat_->name(g));
  return *sq;
}

PullbackReport has_pullbacks(const FinCat& c) {
  PullbackReport report;
  for (MorId f : c.morphisms_by_name()) {
    for (MorId g : c.in(c.dst(f))) {
      if (c.rank(g) < c.rank(f)) continue;
      if (!chosen_pullback(c, f, g)) {
        report.all_exist = false;
        report.missing = std::make_pair(f, g);
        return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Cospan categories and zigzags

CospanCategory::CospanCategory(CatRef base, ObjId left_foot, ObjId right_foot)
    : base_(std::move(base)), left_(left_foot), right_(right_foot) {
  const FinCat& c = *base_;
  for (ObjId z : c.objects_by_name())
    for (MorId u : c.hom(left_, z))
      for (MorId v : c.hom(right_, z)) cospans_.push_back({z, u, v});
  out_.assign(cospans_.size(), {});
  in_.assign(cospans_.size(), {});
  for (std::size_t i = 0; i < cospans_.size(); ++i) {
    const Cospan& from = cospans_[i];
    for (MorId k : c.out(from.apex)) {
      Cospan to{c.dst(k), c.compose_unchecked(k, from.left), c.compose_unchecked(k, from.right)};
      std::size_t j = *find(to);
      out_[i].push_back({k, j});
      in_[j].push_back({k, i});
    }
  }
  for (auto& edges : in_)
    std::stable_sort(edges.begin(), edges.end(),
                     [&](const Edge& a, const Edge& b) { return c.rank(a.via) < c.rank(b.via); });
}

std::optional<std::size_t> CospanCategory::find(const Cospan& target) const {
  auto it = std::lower_bound(cospans_.begin(), cospans_.end(), target,
                             [&](const Cospan& a, const Cospan& b) {
                               const FinCat& c = *base_;
                               return std::tuple(c.rank(a.apex), c.rank(a.left), c.rank(a.right)) <
                                      std::tuple(c.rank(b.apex), c.rank(b.left), c.rank(b.right));
                             });
  if (it == cospans_.end() || !(*it == target)) return std::nullopt;
  return static_cast<std::size_t>(it - cospans_.begin());
}

bool CospanCategory::is_connected() const {
  if (cospans_.empty()) return false;
  UnionFind uf(cospans_.size());
  for (std::size_t i = 0; i < out_.size(); ++i)
    for (const auto& e : out_[i]) uf.unite(i, e.target);
  return uf.count_classes() == 1;
}

std::optional<Zigzag> find_zigzag(const CospanCategory& k, std::size_t a, std::size_t b) {
  if (a >= k.size() || b >= k.size())
    throw Error(ErrorKind::UnknownObject, "cospan index out of range");
  if (a == b) return Zigzag{};
  const FinCat& c = k.base();
  struct Back {
    std::size_t prev;
    MorId via;
    bool forward;
  };
  std::vector<std::optional<Back>> seen(k.size());
  std::vector<bool> visited(k.size(), false);
  std::deque<std::size_t> queue{a};
  visited[a] = true;
  while (!queue.empty()) {
    std::size_t node = queue.front();
    queue.pop_front();
    // Neighbours by identifier of the connecting morphism, forward first.
    struct Next {
      std::size_t rank;
      bool forward;
      std::size_t target;
      MorId via;
    };
    std::vector<Next> next;
    for (const auto& e : k.edges_from(node)) next.push_back({c.rank(e.via), true, e.target, e.via});
    for (const auto& e : k.edges_into(node)) next.push_back({c.rank(e.via), false, e.target, e.via});
    std::stable_sort(next.begin(), next.end(), [](const Next& x, const Next& y) {
      return std::tuple(x.rank, !x.forward, x.target) < std::tuple(y.rank, !y.forward, y.target);
    });
    for (const auto& n : next) {
      if (visited[n.target]) continue;
      visited[n.target] = true;
      seen[n.target] = Back{node, n.via, n.forward};
      if (n.target == b) {
        Zigzag path;
        std::size_t cur = b;
        while (cur != a) {
          const Back& bk = *seen[cur];
          path.push_back({bk.prev, cur, bk.via, bk.forward});
          cur = bk.prev;
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(n.target);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Functors

void validate_functor(const FunctorData& fn) {
  const FinCat& s = *fn.source;
  const FinCat& t = *fn.target;
  if (fn.on_objects.size() != s.num_objects() || fn.on_morphisms.size() != s.num_morphisms())
    throw Error(ErrorKind::NotFunctorial, "object or morphism map is not total");
  for (ObjId x : fn.on_objects)
    if (!x.valid() || x.index() >= t.num_objects())
      throw Error(ErrorKind::NotFunctorial, "object map leaves the target category");
  for (std::size_t i = 0; i < s.num_morphisms(); ++i) {
    MorId f(i);
    MorId ff = fn(f);
    if (!ff.valid() || ff.index() >= t.num_morphisms())
      throw Error(ErrorKind::NotFunctorial, "morphism map leaves the target category");
    if (t.src(ff) != fn(s.src(f)) || t.dst(ff) != fn(s.dst(f)))
      throw Error(ErrorKind::NotFunctorial, "image of " + s.name(f) + " has wrong endpoints");
  }
  for (std::size_t i = 0; i < s.num_objects(); ++i) {
    ObjId x(i);
    if (fn(s.identity(x)) != t.identity(fn(x)))
      throw Error(ErrorKind::NotFunctorial, "identity of " + s.name(x) + " not preserved");
  }
  for (std::size_t i = 0; i < s.num_morphisms(); ++i) {
    MorId f(i);
    for (MorId g : s.out(s.dst(f)))
      if (fn(s.compose_unchecked(g, f)) != t.compose_unchecked(fn(g), fn(f)))
        throw Error(ErrorKind::NotFunctorial,
                    "composite " + s.name(g) + " after " + s.name(f) + " not preserved");
  }
}

bool is_full_and_faithful(const FunctorData& fn) {
  const FinCat& s = *fn.source;
  const FinCat& t = *fn.target;
  for (std::size_t i = 0; i < s.num_objects(); ++i) {
    for (std::size_t j = 0; j < s.num_objects(); ++j) {
      ObjId x(i), y(j);
      auto hs = s.hom(x, y);
      auto ht = t.hom(fn(x), fn(y));
      if (hs.size() != ht.size()) return false;
      std::vector<MorId> image;
      for (MorId f : hs) image.push_back(fn(f));
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) return false;
    }
  }
  return true;
}

FunctorData full_subcategory(const CatRef& c, const std::vector<ObjId>& objects) {
  CategoryBuilder b;
  std::vector<int> local(c->num_objects(), -1);
  for (ObjId x : objects) {
    if (local[x.index()] >= 0)
      throw Error(ErrorKind::DuplicateIdentifier, "object listed twice: " + c->name(x));
    local[x.index()] = b.add_object(c->name(x)).value;
  }
  std::vector<MorId> to_sub(c->num_morphisms());
  std::vector<MorId> back;
  for (std::size_t i = 0; i < c->num_morphisms(); ++i) {
    MorId f(i);
    int s = local[c->src(f).index()], t = local[c->dst(f).index()];
    if (s < 0 || t < 0) continue;
    to_sub[i] = c->is_identity(f) ? *b.find_morphism(identity_name(c->name(c->src(f))))
                                  : b.add_morphism(c->name(f), ObjId(s), ObjId(t));
  }
  for (std::size_t i = 0; i < c->num_morphisms(); ++i) {
    MorId f(i);
    if (local[c->src(f).index()] < 0 || local[c->dst(f).index()] < 0) continue;
    for (MorId g : c->out(c->dst(f))) {
      if (local[c->dst(g).index()] < 0) continue;
      b.set_composite(to_sub[g.index()], to_sub[i], to_sub[c->compose_unchecked(g, f).index()]);
    }
  }
  auto sub = std::make_shared<const FinCat>(std::move(b).build());
  FunctorData inc{sub, c, {}, {}};
  for (std::size_t i = 0; i < sub->num_objects(); ++i)
    inc.on_objects.push_back(c->object(sub->name(ObjId(i))));
  for (std::size_t i = 0; i < sub->num_morphisms(); ++i)
    inc.on_morphisms.push_back(c->morphism(sub->name(MorId(i))));
  return inc;
}

}  // namespace siftcat
