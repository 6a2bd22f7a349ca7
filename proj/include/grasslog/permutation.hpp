#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace grasslog {

/// A permutation of {0, ..., n-1}; sigma(i) is the image of i.
class Permutation {
 public:
  static Permutation identity(int n) {
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    return Permutation(std::move(images), 1);
  }

  /// Swaps i and j.
  static Permutation transposition(int n, int i, int j) {
    auto p = identity(n);
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("transposition index out of range");
    std::swap(p.images_[static_cast<std::size_t>(i)], p.images_[static_cast<std::size_t>(j)]);
    if (i != j) p.sign_ = -1;
    return p;
  }

  static Permutation from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<bool> seen(images.size(), false);
    for (int v : images) {
      if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
    int sign = parity_sign(images);
    return Permutation(std::move(images), sign);
  }

  /// All n! permutations in lexicographic order of their image arrays.
  static std::vector<Permutation> all(int n) {
    std::vector<Permutation> out;
    std::vector<int> images(static_cast<std::size_t>(n));
    std::iota(images.begin(), images.end(), 0);
    do {
      out.push_back(Permutation(images, parity_sign(images)));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
  }

  /// The k-th entry of all(n), without building the list.
  static Permutation nth(int n, std::size_t k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::size_t> fact(static_cast<std::size_t>(n) + 1, 1);
    for (std::size_t i = 1; i < fact.size(); ++i) fact[i] = fact[i - 1] * i;
    if (k >= fact.back()) throw std::out_of_range("permutation rank out of range");
    std::vector<int> images;
    for (int i = n - 1; i >= 0; --i) {
      const std::size_t q = k / fact[static_cast<std::size_t>(i)];
      k %= fact[static_cast<std::size_t>(i)];
      images.push_back(pool[q]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
    }
    return from_images(std::move(images));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int sign() const { return sign_; }
  int operator()(int i) const { return images_.at(static_cast<std::size_t>(i)); }
  const std::vector<int>& images() const { return images_; }

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("permutation degree mismatch");
    std::vector<int> images(a.images_.size());
    for (std::size_t i = 0; i < images.size(); ++i) images[i] = a(b.images_[i]);
    return Permutation(std::move(images), a.sign_ * b.sign_);
  }

  Permutation inverse() const {
    std::vector<int> images(images_.size());
    for (std::size_t i = 0; i < images.size(); ++i) images[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(images), sign_);
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation(std::vector<int> images, int sign) : images_(std::move(images)), sign_(sign) {}

  static int parity_sign(const std::vector<int>& images) {
    // Sign from the cycle decomposition: each cycle of length L contributes (-1)^(L-1).
    std::vector<bool> seen(images.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images[j])) {
        seen[j] = true;
        ++len;
      }
      if (len % 2 == 0) sign = -sign;
    }
    return sign;
  }

  std::vector<int> images_;
  int sign_ = 1;
};

}  // namespace grasslog
