#pragma once

// Gaussian elimination over GF(ell), pivoting on the first nonzero entry.
// Dense rows up to the column threshold, sparse rows beyond it.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pcong {

inline constexpr std::size_t kDenseColumnThreshold = 10'000;

using SparseRow = std::vector<std::pair<std::uint32_t, std::uint64_t>>;  // sorted by column

// Solves A x = rhs; returns one solution (free variables set to 0) or
// nullopt when the system is inconsistent.
std::optional<std::vector<std::uint64_t>>
solve_dense(std::vector<std::vector<std::uint64_t>> rows,
            std::vector<std::uint64_t> rhs, std::uint64_t ell);

std::optional<std::vector<std::uint64_t>>
solve_sparse(std::vector<SparseRow> rows, std::vector<std::uint64_t> rhs,
             std::size_t ncols, std::uint64_t ell);

// Chooses the representation by column count.
std::optional<std::vector<std::uint64_t>>
solve_linear_system(const std::vector<SparseRow>& rows,
                    const std::vector<std::uint64_t>& rhs,
                    std::size_t ncols, std::uint64_t ell);

} // namespace pcong
