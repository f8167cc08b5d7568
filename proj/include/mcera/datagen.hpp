#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcera/dataset.hpp"

namespace mcera {

// Synthetic dataset generators with pinned seeds, used for the bundled
// fixtures. A "slot" dataset mimics tabular categorical data: every
// transaction picks exactly one value per slot, so transaction length is
// constant and values of the same slot never co-occur.

// slot_value_probs[k] are the value probabilities of slot k (each summing to
// 1). Item ids are assigned 1..total in slot order.
SampleDataset generate_slot_dataset(
    const std::vector<std::vector<double>>& slot_value_probs, std::size_t m,
    std::uint64_t seed);

// 22 slots (15 five-valued, 7 six-valued: 117 items), mildly skewed
// geometric value distributions.
std::vector<std::vector<double>> mushroom_slot_probs();
// 18 slots (15 four-valued, 3 five-valued: 75 items).
std::vector<std::vector<double>> chess_slot_probs();

// The bundled fixtures: fixed m and seed, so they regenerate byte-identically
// anywhere. mushroom-like: m=8124, 117 items, every transaction 22 items.
// chess-like: m=3196, 75 items, every transaction 18 items.
SampleDataset mushroom_fixture();
SampleDataset chess_fixture();

}  // namespace mcera
