#include "pcong/linsolve.hpp"

#include <algorithm>

#include "pcong/modfield.hpp"

namespace pcong {

std::optional<std::vector<std::uint64_t>>
solve_dense(std::vector<std::vector<std::uint64_t>> rows,
            std::vector<std::uint64_t> rhs, std::uint64_t ell) {
    const std::size_t nrows = rows.size();
    const std::size_t ncols = nrows ? rows[0].size() : 0;
    std::vector<std::uint32_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
        std::size_t piv = r;
        while (piv < nrows && rows[piv][c] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(rows[piv], rows[r]);
        std::swap(rhs[piv], rhs[r]);
        const std::uint64_t inv = mod_inv(rows[r][c], ell);
        for (std::size_t j = c; j < ncols; ++j)
            rows[r][j] = mod_mul(rows[r][j], inv, ell);
        rhs[r] = mod_mul(rhs[r], inv, ell);
        for (std::size_t i = r + 1; i < nrows; ++i) {
            const std::uint64_t f = rows[i][c];
            if (!f) continue;
            const std::uint64_t nf = ell - f;
            const auto& prow = rows[r];
            auto& irow = rows[i];
            for (std::size_t j = c; j < ncols; ++j) {
                if (prow[j]) irow[j] = (irow[j] + nf * prow[j]) % ell;
            }
            rhs[i] = (rhs[i] + nf * rhs[r]) % ell;
        }
        pivot_col.push_back(static_cast<std::uint32_t>(c));
        ++r;
    }
    for (std::size_t i = r; i < nrows; ++i)
        if (rhs[i] % ell) return std::nullopt;

    std::vector<std::uint64_t> x(ncols, 0);
    for (std::size_t i = pivot_col.size(); i-- > 0;) {
        const std::uint32_t c = pivot_col[i];
        std::uint64_t acc = rhs[i];
        const auto& row = rows[i];
        for (std::size_t j = c + 1; j < ncols; ++j)
            if (row[j] && x[j]) acc = mod_sub(acc, mod_mul(row[j], x[j], ell), ell);
        x[c] = acc;
    }
    return x;
}

namespace {

// r <- r - f * p (sparse rows sorted by column); returns reduced row.
SparseRow sparse_axpy(const SparseRow& r, std::uint64_t f, const SparseRow& p,
                      std::uint64_t ell) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, mod_mul(mod_neg(f, ell), p[j].second, ell));
            ++j;
        } else {
            std::uint64_t v = mod_sub(r[i].second, mod_mul(f, p[j].second, ell), ell);
            if (v) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

std::optional<std::vector<std::uint64_t>>
solve_sparse(std::vector<SparseRow> rows, std::vector<std::uint64_t> rhs,
             std::size_t ncols, std::uint64_t ell) {
    // incremental echelon: pivots[c] = index of the monic row leading at c
    std::vector<std::int64_t> pivot_of_col(ncols, -1);
    std::vector<SparseRow> basis;
    std::vector<std::uint64_t> basis_rhs;
    std::vector<std::uint32_t> basis_lead;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        SparseRow cur = std::move(rows[i]);
        std::uint64_t cur_rhs = rhs[i] % ell;
        while (!cur.empty()) {
            const std::uint32_t lead = cur.front().first;
            const std::int64_t p = pivot_of_col[lead];
            if (p < 0) break;
            const std::uint64_t f = cur.front().second;
            cur = sparse_axpy(cur, f, basis[static_cast<std::size_t>(p)], ell);
            cur_rhs = mod_sub(cur_rhs, mod_mul(f, basis_rhs[static_cast<std::size_t>(p)], ell), ell);
        }
        if (cur.empty()) {
            if (cur_rhs) return std::nullopt;
            continue;
        }
        const std::uint64_t inv = mod_inv(cur.front().second, ell);
        for (auto& [c, v] : cur) v = mod_mul(v, inv, ell);
        cur_rhs = mod_mul(cur_rhs, inv, ell);
        pivot_of_col[cur.front().first] = static_cast<std::int64_t>(basis.size());
        basis_lead.push_back(cur.front().first);
        basis.push_back(std::move(cur));
        basis_rhs.push_back(cur_rhs);
    }

    // back substitution in decreasing order of leading column
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return basis_lead[a] > basis_lead[b];
    });
    std::vector<std::uint64_t> x(ncols, 0);
    for (std::size_t idx : order) {
        std::uint64_t acc = basis_rhs[idx];
        const auto& row = basis[idx];
        for (std::size_t t = 1; t < row.size(); ++t)
            if (x[row[t].first])
                acc = mod_sub(acc, mod_mul(row[t].second, x[row[t].first], ell), ell);
        x[row.front().first] = acc;
    }
    return x;
}

std::optional<std::vector<std::uint64_t>>
solve_linear_system(const std::vector<SparseRow>& rows,
                    const std::vector<std::uint64_t>& rhs,
                    std::size_t ncols, std::uint64_t ell) {
    if (ncols > kDenseColumnThreshold)
        return solve_sparse(rows, rhs, ncols, ell);
    std::vector<std::vector<std::uint64_t>> dense(rows.size(),
                                                  std::vector<std::uint64_t>(ncols, 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [c, v] : rows[i]) dense[i][c] = v % ell;
    return solve_dense(std::move(dense), rhs, ell);
}

} // namespace pcong
