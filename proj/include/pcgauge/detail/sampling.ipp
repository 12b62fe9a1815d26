#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace pcgauge {

template <class Draw>
std::vector<double> sample_values(std::size_t n, std::uint64_t seed, unsigned workers, Draw&& draw) {
  std::vector<double> values(n);
  const std::size_t w = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto run = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t s = begin; s < end; ++s) {
        Rng rng = Rng::for_stream(seed, s);
        values[s] = draw(rng);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (w == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(w);
    for (std::size_t t = 0; t < w; ++t) threads.emplace_back(run, n * t / w, n * (t + 1) / w);
    for (auto& th : threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return values;
}

}  // namespace pcgauge
