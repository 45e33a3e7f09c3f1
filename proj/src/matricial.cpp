#include "lpagrade/matricial.hpp"

#include "lpagrade/error.hpp"

#include <algorithm>
#include <tuple>

namespace lpagrade {

GradedMatricialAlgebra matricial_representation(const Graph& g, std::size_t max_cycles) {
  GradedMatricialAlgebra a;
  const std::vector<Cycle> cycles = enumerate_cycles(g, max_cycles);
  for (const Cycle& c : cycles)
    if (cycle_has_exit(g, c))
      throw PreconditionError("graph is not no-exit: the cycle based at '" + c.base +
                              "' has an exit");

  for (const std::string& s : sinks(g)) a.sink_blocks.push_back(SinkBlock{s, paths_into(g, s, std::nullopt)});
  for (const Cycle& c : cycles)
    a.cycle_blocks.push_back(CycleBlock{c, c.length(), paths_into(g, c.base, c)});
  return a;
}

namespace {

std::vector<BigInt> residue_counts(const ShiftMultiset& shifts, std::size_t period) {
  std::vector<BigInt> counts(period, BigInt(0));
  const auto m = static_cast<std::int64_t>(period);
  for (const auto& [shift, count] : shifts)
    counts[static_cast<std::size_t>(floor_mod(shift, m))] += count;
  return counts;
}

CycleBlock canonical_block(const CycleBlock& block) {
  const std::size_t m = block.period;
  const std::vector<BigInt> counts = residue_counts(block.shifts, m);
  // Translating every shift by t rotates the profile: rotated[j] = counts[j - t].
  std::vector<BigInt> best;
  for (std::size_t t = 0; t < m; ++t) {
    std::vector<BigInt> rotated(m);
    for (std::size_t j = 0; j < m; ++j) rotated[j] = counts[(j + m - t) % m];
    if (best.empty() || rotated < best) best = std::move(rotated);
  }
  CycleBlock out{block.cycle, m, {}};
  for (std::size_t j = 0; j < m; ++j)
    if (best[j] != 0) out.shifts[static_cast<std::int64_t>(j)] = best[j];
  return out;
}

SinkBlock canonical_block(const SinkBlock& block) {
  SinkBlock out{block.sink, {}};
  if (block.shifts.empty()) return out;
  const std::int64_t low = block.shifts.begin()->first;
  for (const auto& [shift, count] : block.shifts) out.shifts[shift - low] = count;
  return out;
}

}  // namespace

GradedMatricialAlgebra canonicalize(const GradedMatricialAlgebra& a) {
  GradedMatricialAlgebra out;
  for (const SinkBlock& b : a.sink_blocks) out.sink_blocks.push_back(canonical_block(b));
  for (const CycleBlock& b : a.cycle_blocks) out.cycle_blocks.push_back(canonical_block(b));

  std::sort(out.sink_blocks.begin(), out.sink_blocks.end(),
            [](const SinkBlock& x, const SinkBlock& y) {
              const BigInt sx = x.size(), sy = y.size();
              return std::tie(sx, x.shifts, x.sink) < std::tie(sy, y.shifts, y.sink);
            });
  std::sort(out.cycle_blocks.begin(), out.cycle_blocks.end(),
            [](const CycleBlock& x, const CycleBlock& y) {
              const BigInt sx = x.size(), sy = y.size();
              return std::tie(x.period, sx, x.shifts, x.cycle) <
                     std::tie(y.period, sy, y.shifts, y.cycle);
            });
  return out;
}

bool same_shape(const GradedMatricialAlgebra& a, const GradedMatricialAlgebra& b) {
  return std::equal(a.sink_blocks.begin(), a.sink_blocks.end(), b.sink_blocks.begin(),
                    b.sink_blocks.end(),
                    [](const SinkBlock& x, const SinkBlock& y) { return x.shifts == y.shifts; }) &&
         std::equal(a.cycle_blocks.begin(), a.cycle_blocks.end(), b.cycle_blocks.begin(),
                    b.cycle_blocks.end(), [](const CycleBlock& x, const CycleBlock& y) {
                      return x.period == y.period && x.shifts == y.shifts;
                    });
}

bool graded_iso_sufficient(const GradedMatricialAlgebra& a, const GradedMatricialAlgebra& b) {
  return same_shape(canonicalize(a), canonicalize(b));
}

KTheoryPresentation k_theory_presentation(const GradedMatricialAlgebra& a) {
  KTheoryPresentation k;
  for (const SinkBlock& b : a.sink_blocks) k.components.emplace_back(FreeComponent{b.shifts});
  for (const CycleBlock& b : a.cycle_blocks)
    k.components.emplace_back(CyclicComponent{b.period, residue_counts(b.shifts, b.period)});
  return k;
}

namespace {

std::vector<std::int64_t> expand(const ShiftMultiset& shifts) {
  if (total_count(shifts) > BigInt(kMaxExpandedBlock))
    throw ResourceLimitError("block size exceeds " + std::to_string(kMaxExpandedBlock) +
                             " and cannot be expanded into a shift list");
  std::vector<std::int64_t> out;
  for (const auto& [shift, count] : shifts)
    out.insert(out.end(), count.convert_to<std::size_t>(), shift);
  return out;
}

}  // namespace

ShiftedMatrixRing as_matrix_ring(const SinkBlock& block) {
  return laurent_matrix_ring(0, expand(block.shifts));
}

ShiftedMatrixRing as_matrix_ring(const CycleBlock& block) {
  return laurent_matrix_ring(static_cast<std::int64_t>(block.period), expand(block.shifts));
}

}  // namespace lpagrade
