#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace symctl {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bijection on {0, ..., m-1}. images()[x] is the image of point x.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation Identity(int degree);

  // Parses 1-based cycle notation, e.g. "(3 7)(4 10)(8 9)". "()" or "" is the
  // identity.
  static Permutation FromCycles(std::string_view cycles, int degree);

  // 1-based image array, e.g. {2, 1, 3}.
  static Permutation FromOneBased(std::span<const int> images);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[x]; }
  const std::vector<int>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  // 1-based cycle notation, fixed points omitted.
  std::string ToCycles() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// (a ∘ b)(x) = a(b(x)).
Permutation compose(const Permutation& a, const Permutation& b);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

// A generator letter in a word: generator index, optionally inverted.
struct Letter {
  int generator = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

struct GroupElement {
  Permutation perm;
  std::vector<Letter> word;
};

class PermutationGroup {
 public:
  static constexpr std::size_t kDefaultCap = 100000;

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }

  // Index of p in elements(), or -1.
  long index_of(const Permutation& p) const;
  // Index of element(i) ∘ element(j).
  std::size_t product(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;

  friend PermutationGroup closure(std::vector<Permutation> generators,
                                  int degree, std::size_t cap);

 private:
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<GroupElement> elements_;
  std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
  std::vector<std::size_t> inverse_;
};

// Breadth-first closure. Element 0 is the identity; each element stores the
// first word found in BFS order with generators tried in declared order.
// Throws GroupError when more than `cap` elements are produced.
PermutationGroup closure(std::vector<Permutation> generators, int degree,
                         std::size_t cap = PermutationGroup::kDefaultCap);

// Maps each group element to the product of generator images along its
// word. Value must provide `Value operator*(const Value&, const Value&)`;
// `identity` is the neutral value and `invert` computes inverses.
template <typename Value, typename Invert>
std::vector<Value> extend_by_words(const PermutationGroup& group,
                                   const std::vector<Value>& generator_images,
                                   const Value& identity, Invert invert) {
  if (generator_images.size() != group.generators().size()) {
    throw GroupError("extend_by_words: " +
                     std::to_string(generator_images.size()) +
                     " images for " +
                     std::to_string(group.generators().size()) +
                     " generators");
  }
  std::vector<Value> inverses;
  inverses.reserve(generator_images.size());
  for (const auto& v : generator_images) inverses.push_back(invert(v));

  std::vector<Value> out;
  out.reserve(group.order());
  for (const auto& el : group.elements()) {
    Value acc = identity;
    for (const Letter& l : el.word) {
      acc = acc * (l.inverse ? inverses[l.generator]
                             : generator_images[l.generator]);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

inline Permutation operator*(const Permutation& a, const Permutation& b) {
  return compose(a, b);
}

}  // namespace symctl
