#include "symctl/permgroup.hpp"

#include <cctype>
#include <deque>
#include <sstream>

namespace symctl {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[v]) {
      throw GroupError("not a bijection on {0.." +
                       std::to_string(degree() - 1) + "}");
    }
    seen[v] = 1;
  }
}

Permutation Permutation::Identity(int degree) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i) im[i] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::FromCycles(std::string_view cycles, int degree) {
  std::vector<int> im(degree);
  for (int i = 0; i < degree; ++i) im[i] = i;
  std::vector<char> touched(degree, 0);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < cycles.size() &&
           std::isspace(static_cast<unsigned char>(cycles[pos])))
      ++pos;
  };
  skip_ws();
  while (pos < cycles.size()) {
    if (cycles[pos] != '(') {
      throw GroupError("cycle notation: expected '(' at offset " +
                       std::to_string(pos) + " in \"" + std::string(cycles) +
                       "\"");
    }
    ++pos;
    std::vector<int> cyc;
    for (;;) {
      while (pos < cycles.size() &&
             (std::isspace(static_cast<unsigned char>(cycles[pos])) ||
              cycles[pos] == ','))
        ++pos;
      if (pos >= cycles.size()) {
        throw GroupError("cycle notation: unterminated cycle in \"" +
                         std::string(cycles) + "\"");
      }
      if (cycles[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(cycles[pos]))) {
        throw GroupError("cycle notation: unexpected '" +
                         std::string(1, cycles[pos]) + "' in \"" +
                         std::string(cycles) + "\"");
      }
      int v = 0;
      while (pos < cycles.size() &&
             std::isdigit(static_cast<unsigned char>(cycles[pos]))) {
        v = v * 10 + (cycles[pos] - '0');
        ++pos;
      }
      if (v < 1 || v > degree) {
        throw GroupError("cycle notation: point " + std::to_string(v) +
                         " outside 1.." + std::to_string(degree));
      }
      cyc.push_back(v - 1);
    }
    for (int p : cyc) {
      if (touched[p]) {
        throw GroupError("cycle notation: point " + std::to_string(p + 1) +
                         " appears twice in \"" + std::string(cycles) + "\"");
      }
      touched[p] = 1;
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      im[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
    skip_ws();
  }
  return Permutation(std::move(im));
}

Permutation Permutation::FromOneBased(std::span<const int> images) {
  std::vector<int> im;
  im.reserve(images.size());
  for (int v : images) im.push_back(v - 1);
  return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

std::string Permutation::ToCycles() const {
  std::ostringstream os;
  std::vector<char> seen(images_.size(), 0);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    os << '(';
    int x = start;
    bool first = true;
    while (!seen[x]) {
      seen[x] = 1;
      if (!first) os << ' ';
      os << x + 1;
      first = false;
      x = images_[x];
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) {
    throw GroupError("compose: degree mismatch (" + std::to_string(a.degree()) +
                     " vs " + std::to_string(b.degree()) + ")");
  }
  std::vector<int> im(a.degree());
  for (int x = 0; x < a.degree(); ++x) im[x] = a(b(x));
  return Permutation(std::move(im));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : p.images()) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
  }
  return h;
}

long PermutationGroup::index_of(const Permutation& p) const {
  auto it = index_.find(p);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

std::size_t PermutationGroup::product(std::size_t i, std::size_t j) const {
  return index_.at(compose(elements_[i].perm, elements_[j].perm));
}

std::size_t PermutationGroup::inverse(std::size_t i) const {
  return inverse_[i];
}

PermutationGroup closure(std::vector<Permutation> generators, int degree,
                         std::size_t cap) {
  if (cap < 1) throw GroupError("closure: cap must be >= 1");
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw GroupError("closure: generator " + g.ToCycles() + " has degree " +
                       std::to_string(g.degree()) + ", expected " +
                       std::to_string(degree));
    }
  }

  PermutationGroup group;
  group.degree_ = degree;
  group.generators_ = std::move(generators);

  auto add = [&](Permutation p, std::vector<Letter> word) {
    if (group.elements_.size() >= cap) {
      throw GroupError("closure: enumeration exceeded cap of " +
                       std::to_string(cap) + " elements");
    }
    group.index_.emplace(p, group.elements_.size());
    group.elements_.push_back({std::move(p), std::move(word)});
  };

  add(Permutation::Identity(degree), {});
  // Right multiplication by generators: word(g·s) = word(g) + s, so the
  // element equals the ordered product of its letters.
  for (std::size_t head = 0; head < group.elements_.size(); ++head) {
    for (int s = 0; s < static_cast<int>(group.generators_.size()); ++s) {
      Permutation next =
          compose(group.elements_[head].perm, group.generators_[s]);
      if (group.index_.contains(next)) continue;
      std::vector<Letter> word = group.elements_[head].word;
      word.push_back({s, false});
      add(std::move(next), std::move(word));
    }
  }

  group.inverse_.resize(group.elements_.size());
  for (std::size_t i = 0; i < group.elements_.size(); ++i) {
    group.inverse_[i] = group.index_.at(group.elements_[i].perm.inverse());
  }
  return group;
}

}  // namespace symctl
