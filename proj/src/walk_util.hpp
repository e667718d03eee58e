// Helpers shared by the series and estimate code.
#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "lawson/cdisc.hpp"

namespace lawson::detail {

// (M_j) acting on row vectors: e_v M_l = sign * 2i * e_u
inline int step_sign(int v, int l) {
  if (v == 1) return 1;
  if (v == 2) return -1;
  return l == 2 ? 1 : -1;
}

inline int next_vertex(int v, int l) {
  switch (l) {
    case 1: return v == 1 ? 2 : 1;
    case 2: return v == 2 ? 3 : 2;
    default: return v == 1 ? 3 : 1;
  }
}

/// Sign of e_3 M_w in its only nonzero entry, divided by (2i)^|w|.
inline int walk_sign(const std::vector<int>& w) {
  int v = 3, sign = 1;
  for (int l : w) {
    sign *= step_sign(v, l);
    v = next_vertex(v, l);
  }
  return sign;
}

inline CertifiedComplex two_i_pow(int L) {
  CertifiedComplex z = CertifiedComplex(1).mul_2exp(L);
  for (int k = 0; k < L % 4; ++k) z = z.mul_i();
  return z;
}

template <class F>
void parallel_for(std::size_t count, int jobs, F&& f) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  for (std::size_t t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < count; i = next++) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace lawson::detail
