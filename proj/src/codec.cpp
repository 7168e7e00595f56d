#include "regenlab/codec.hpp"

#include <algorithm>
#include <cmath>

#include "regenlab/errors.hpp"
#include "regenlab/rng.hpp"
#include "regenlab/util.hpp"

namespace regenlab {

namespace {

constexpr double kTol = 1e-6;

// Applies a coefficient matrix to a list of blocks (coding vectors and, when
// present, payloads).
std::vector<CodedBlock> combine(const FieldMatrix& coeff, std::span<const CodedBlock> in,
                                const GaloisField& f, int file_blocks) {
  const std::size_t out_count = coeff.rows();
  const std::size_t m = static_cast<std::size_t>(file_blocks);
  const std::size_t payload_len = in.empty() ? 0 : in.front().payload.size();
  std::vector<CodedBlock> out(out_count);
  for (std::size_t r = 0; r < out_count; ++r) {
    out[r].coding.assign(m, 0);
    out[r].payload.assign(payload_len, 0);
    for (std::size_t t = 0; t < in.size(); ++t) {
      const std::uint16_t c = coeff.at(r, t);
      if (c == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        out[r].coding[j] = f.add(out[r].coding[j], f.mul(c, in[t].coding[j]));
      for (std::size_t j = 0; j < payload_len; ++j)
        out[r].payload[j] = f.add(out[r].payload[j], f.mul(c, in[t].payload[j]));
    }
  }
  return out;
}

FieldMatrix stack_coding(const StorageSystem& sys, std::span<const int> ids) {
  FieldMatrix m(*sys.field, 0, sys.params.file_blocks);
  for (int id : ids) {
    for (const CodedBlock& b : sys.nodes[id].blocks) m.append_row(b.coding);
  }
  return m;
}

}  // namespace

void SystemParams::validate() const {
  if (k < 1 || k > d || d > n - 1)
    throw Error(Errc::InvalidParams, "need 1 <= k <= d <= n-1");
  if (file_blocks < 1 || node_blocks < 1 || repair_blocks <= 0)
    throw Error(Errc::InvalidParams, "M, alpha and beta must be positive");
  const double M = file_blocks, alpha = node_blocks;
  if (alpha * k < M - kTol * M)
    throw Error(Errc::InvalidParams, "alpha below M/k");
  if (alpha > d * repair_blocks + kTol * M)
    throw Error(Errc::InvalidParams, "alpha above d*beta");
  double total = 0;
  for (int i = 1; i <= k; ++i) total += std::min((d - i + 1) * repair_blocks, alpha);
  if (std::abs(total - M) > kTol * std::max(1.0, M))
    throw Error(Errc::InvalidParams, "beta does not match the storage/bandwidth tradeoff");
}

FieldMatrix StorageNode::coding_matrix(const GaloisField& f, int file_blocks) const {
  FieldMatrix m(f, 0, file_blocks);
  for (const CodedBlock& b : blocks) m.append_row(b.coding);
  return m;
}

StorageSystem distribute(const std::vector<std::vector<std::uint16_t>>& source_blocks,
                         const SystemParams& params, const GaloisField& field,
                         std::uint64_t seed) {
  params.validate();
  if (static_cast<int>(source_blocks.size()) != params.file_blocks)
    throw Error(Errc::InvalidParams, "source must have exactly M blocks");
  const std::size_t payload_len = source_blocks.empty() ? 0 : source_blocks.front().size();
  for (const auto& b : source_blocks) {
    if (b.size() != payload_len)
      throw Error(Errc::InvalidParams, "source blocks must have equal length");
  }

  StorageSystem sys;
  sys.params = params;
  sys.field = &field;
  sys.rng_seed = seed;
  sys.nodes.resize(params.n);

  const int m = params.file_blocks;
  for (int i = 0; i < params.n; ++i) {
    StorageNode& node = sys.nodes[i];
    node.id = i;
    const FieldMatrix coeff = FieldMatrix::random_full_rank(
        field, params.node_blocks, m, mix_seed(seed, 0x5eed0000ULL + i));
    node.blocks.resize(params.node_blocks);
    for (int r = 0; r < params.node_blocks; ++r) {
      node.blocks[r].coding.assign(coeff.row(r).begin(), coeff.row(r).end());
      node.blocks[r].payload.assign(payload_len, 0);
      for (int j = 0; j < m; ++j) {
        const std::uint16_t c = coeff.at(r, j);
        if (c == 0) continue;
        for (std::size_t s = 0; s < payload_len; ++s) {
          node.blocks[r].payload[s] =
              field.add(node.blocks[r].payload[s], field.mul(c, source_blocks[j][s]));
        }
      }
    }
  }
  return sys;
}

std::vector<CodedBlock> provider_encode(const StorageNode& node, int count,
                                        const GaloisField& f, int file_blocks,
                                        std::uint64_t seed) {
  if (count < 0 || count > static_cast<int>(node.blocks.size()))
    throw Error(Errc::TooManyBlocks, "provider cannot generate more blocks than it stores");
  if (count == 0) return {};
  const FieldMatrix coeff =
      FieldMatrix::random_full_rank(f, count, node.blocks.size(), seed);
  return combine(coeff, node.blocks, f, file_blocks);
}

std::vector<CodedBlock> intermediate_combine(std::vector<CodedBlock> received,
                                             std::span<const CodedBlock> own, int cap,
                                             const GaloisField& f, int file_blocks,
                                             std::uint64_t seed) {
  std::vector<CodedBlock> pool = std::move(received);
  pool.insert(pool.end(), own.begin(), own.end());
  if (static_cast<int>(pool.size()) <= cap) return pool;
  const FieldMatrix coeff = FieldMatrix::random_full_rank(f, cap, pool.size(), seed);
  return combine(coeff, pool, f, file_blocks);
}

StorageNode newcomer_regenerate(int id, std::span<const CodedBlock> incoming, int alpha,
                                const GaloisField& f, int file_blocks, std::uint64_t seed) {
  if (incoming.empty())
    throw Error(Errc::InvalidParams, "newcomer needs at least one incoming block");
  const FieldMatrix coeff = FieldMatrix::random_full_rank(f, alpha, incoming.size(), seed);
  StorageNode node;
  node.id = id;
  node.blocks = combine(coeff, incoming, f, file_blocks);
  return node;
}

ReconstructResult reconstruct(const StorageSystem& sys, std::span<const int> node_ids) {
  if (static_cast<int>(node_ids.size()) != sys.params.k)
    throw Error(Errc::InvalidParams, "reconstruct needs exactly k nodes");
  for (int id : node_ids) {
    if (id < 0 || id >= sys.params.n)
      throw Error(Errc::InvalidParams, "reconstruct: node id out of range");
  }

  const FieldMatrix coding = stack_coding(sys, node_ids);
  ReconstructResult res;
  res.rank = coding.rank();
  if (res.rank < static_cast<std::size_t>(sys.params.file_blocks)) return res;
  res.ok = true;

  const std::size_t payload_len =
      sys.nodes[node_ids[0]].blocks.empty() ? 0 : sys.nodes[node_ids[0]].blocks[0].payload.size();
  if (payload_len == 0) return res;

  FieldMatrix rhs(*sys.field, 0, payload_len);
  for (int id : node_ids) {
    for (const CodedBlock& b : sys.nodes[id].blocks) rhs.append_row(b.payload);
  }
  const auto solved = coding.solve(rhs, /*require_unique=*/true);
  if (solved.status != SolveStatus::Ok) {
    res.ok = false;  // cannot happen when rank == M; kept as a guard
    return res;
  }
  res.blocks.resize(sys.params.file_blocks);
  for (int j = 0; j < sys.params.file_blocks; ++j)
    res.blocks[j].assign(solved.x.row(j).begin(), solved.x.row(j).end());
  return res;
}

MdsReport mds_check(const StorageSystem& sys, std::optional<int> sample_count,
                    std::uint64_t seed) {
  MdsReport report;
  const std::size_t M = sys.params.file_blocks;

  auto check = [&](std::span<const int> subset) {
    ++report.subsets_checked;
    if (stack_coding(sys, subset).rank() < M) {
      report.ok = false;
      report.failing_subsets.emplace_back(subset.begin(), subset.end());
    }
  };

  if (sample_count) {
    Rng rng(seed);
    std::vector<int> ids(sys.params.n);
    for (int i = 0; i < sys.params.n; ++i) ids[i] = i;
    for (int s = 0; s < *sample_count; ++s) {
      std::vector<int> subset = sample_distinct(ids, sys.params.k, rng);
      std::sort(subset.begin(), subset.end());
      check(subset);
    }
  } else {
    for_each_combination(sys.params.n, sys.params.k, [&](std::span<const int> subset) {
      check(subset);
      return true;
    });
  }
  return report;
}

}  // namespace regenlab
