#include "mcera/datagen.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mcera/rng.hpp"

namespace mcera {

SampleDataset generate_slot_dataset(
    const std::vector<std::vector<double>>& slot_value_probs, std::size_t m,
    std::uint64_t seed) {
  std::size_t total_items = 0;
  for (const auto& probs : slot_value_probs) {
    if (probs.empty())
      throw std::invalid_argument("every slot needs at least one value");
    double sum = 0.0;
    for (double p : probs) {
      if (!(p > 0.0)) throw std::invalid_argument("value probs must be > 0");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("slot value probs must sum to 1");
    total_items += probs.size();
  }

  SampleDataset ds;
  for (std::size_t k = 0; k < total_items; ++k)
    ds.alphabet.push_back(static_cast<std::uint32_t>(k + 1));
  std::mt19937_64 gen(seed);
  ds.transactions.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto& t = ds.transactions[i];
    t.reserve(slot_value_probs.size());
    std::uint32_t base = 1;
    for (const auto& probs : slot_value_probs) {
      const double u = uniform_unit(gen);
      double acc = 0.0;
      std::size_t pick = probs.size() - 1;
      for (std::size_t v = 0; v < probs.size(); ++v) {
        acc += probs[v];
        if (u < acc) {
          pick = v;
          break;
        }
      }
      t.push_back(base + static_cast<std::uint32_t>(pick));
      base += static_cast<std::uint32_t>(probs.size());
    }
  }
  return ds;
}

namespace {

// Deterministic per-slot perturbation in [0, 1).
double slot_noise(std::uint64_t tag, std::uint64_t slot) {
  std::uint64_t s = tag * 0x9e3779b97f4a7c15ULL + slot;
  return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

std::vector<double> geometric_probs(std::size_t values, double ratio) {
  std::vector<double> probs(values);
  double acc = 0.0;
  double w = 1.0;
  for (std::size_t v = 0; v < values; ++v) {
    probs[v] = w;
    acc += w;
    w *= ratio;
  }
  for (double& p : probs) p /= acc;
  return probs;
}

}  // namespace

std::vector<std::vector<double>> mushroom_slot_probs() {
  std::vector<std::vector<double>> slots;
  for (std::size_t k = 0; k < 22; ++k) {
    const std::size_t values = k < 15 ? 5 : 6;
    const double ratio = 0.68 + 0.14 * slot_noise(1, k);
    slots.push_back(geometric_probs(values, ratio));
  }
  return slots;
}

std::vector<std::vector<double>> chess_slot_probs() {
  std::vector<std::vector<double>> slots;
  for (std::size_t k = 0; k < 18; ++k) {
    const std::size_t values = k < 15 ? 4 : 5;
    const double ratio = 0.72 + 0.12 * slot_noise(2, k);
    slots.push_back(geometric_probs(values, ratio));
  }
  return slots;
}

SampleDataset mushroom_fixture() {
  return generate_slot_dataset(mushroom_slot_probs(), 8124,
                               0x6d757368726f6f6dULL);
}

SampleDataset chess_fixture() {
  return generate_slot_dataset(chess_slot_probs(), 3196, 0x6368657373ULL);
}

}  // namespace mcera
