#pragma once

#include <chrono>
#include <ctime>

namespace surrogate {

struct Elapsed {
  double wall = 0.0;  // seconds
  double cpu = 0.0;   // process CPU seconds

  Elapsed& operator+=(const Elapsed& o) {
    wall += o.wall;
    cpu += o.cpu;
    return *this;
  }
};

class Stopwatch {
 public:
  Stopwatch() : wall0_(std::chrono::steady_clock::now()), cpu0_(std::clock()) {}

  Elapsed elapsed() const {
    return {std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0_).count(),
            static_cast<double>(std::clock() - cpu0_) / CLOCKS_PER_SEC};
  }

 private:
  std::chrono::steady_clock::time_point wall0_;
  std::clock_t cpu0_;
};

}  // namespace surrogate
