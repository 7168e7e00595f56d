#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regenlab/matrix.hpp"

namespace regenlab {

// Code parameters in block units.
struct SystemParams {
  int n = 0;                 // storage nodes
  int k = 0;                 // reconstruction threshold
  int d = 0;                 // providers per repair
  int file_blocks = 0;       // M
  int node_blocks = 0;       // alpha
  double repair_blocks = 0;  // beta, conventional per-provider repair traffic

  // Checks k <= d <= n-1, M/k <= alpha <= d*beta, and that
  // sum_{i=1..k} min((d-i+1)*beta, alpha) = M within tolerance.
  void validate() const;
};

struct CodedBlock {
  std::vector<std::uint16_t> coding;   // length-M coding vector
  std::vector<std::uint16_t> payload;  // empty when payloads are disabled
};

struct StorageNode {
  int id = -1;
  std::vector<CodedBlock> blocks;

  FieldMatrix coding_matrix(const GaloisField& f, int file_blocks) const;
};

struct StorageSystem {
  SystemParams params;
  const GaloisField* field = nullptr;
  std::vector<StorageNode> nodes;
  std::uint64_t rng_seed = 0;
};

// Splits the file into n nodes of alpha random combinations each; every
// node's own coefficient matrix has full rank. Source blocks may be empty
// (coding-vector-only mode) or all of one equal symbol length.
StorageSystem distribute(const std::vector<std::vector<std::uint16_t>>& source_blocks,
                         const SystemParams& params, const GaloisField& field,
                         std::uint64_t seed);

// `count` random combinations of the node's local blocks with a rank-`count`
// coefficient matrix. Throws Errc::TooManyBlocks when count exceeds what the
// node stores.
std::vector<CodedBlock> provider_encode(const StorageNode& node, int count,
                                        const GaloisField& f, int file_blocks,
                                        std::uint64_t seed);

// Relay step: everything is forwarded unchanged while it fits the cap;
// otherwise exactly `cap` random combinations of the union are emitted.
std::vector<CodedBlock> intermediate_combine(std::vector<CodedBlock> received,
                                             std::span<const CodedBlock> own, int cap,
                                             const GaloisField& f, int file_blocks,
                                             std::uint64_t seed);

// alpha random combinations of the incoming blocks. The coefficient matrix
// has rank min(alpha, incoming), so the span is preserved whenever it fits.
StorageNode newcomer_regenerate(int id, std::span<const CodedBlock> incoming, int alpha,
                                const GaloisField& f, int file_blocks, std::uint64_t seed);

struct ReconstructResult {
  bool ok = false;
  std::size_t rank = 0;  // stacked coding-vector rank
  std::vector<std::vector<std::uint16_t>> blocks;  // decoded source when payloads present
};

// Decodes from exactly k nodes; fails (reporting the deficient rank) when the
// stacked coding vectors do not reach rank M.
ReconstructResult reconstruct(const StorageSystem& sys, std::span<const int> node_ids);

struct MdsReport {
  bool ok = true;
  std::vector<std::vector<int>> failing_subsets;
  std::size_t subsets_checked = 0;
};

// Rank-M test over k-subsets: exhaustive when sample_count is absent,
// otherwise that many seeded draws.
MdsReport mds_check(const StorageSystem& sys, std::optional<int> sample_count = std::nullopt,
                    std::uint64_t seed = 0);

}  // namespace regenlab
