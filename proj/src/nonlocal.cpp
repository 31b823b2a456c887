#include "ngmeet/nonlocal.hpp"

#include <algorithm>
#include <stdexcept>

#include "ngmeet/parallel.hpp"

namespace ngmeet {

void PatchGeometry::validate(int rows, int cols) const {
    if (patch_size < 1 || patch_size > std::min(rows, cols))
        throw std::invalid_argument(
            "PatchGeometry: patch_size out of range for image");
    if (stride < 1) throw std::invalid_argument("PatchGeometry: stride < 1");
    if (group_size < 1)
        throw std::invalid_argument("PatchGeometry: group_size < 1");
    if (search_radius < 0)
        throw std::invalid_argument("PatchGeometry: search_radius < 0");
}

namespace {

std::vector<int> axis_positions(int extent, int patch, int stride) {
    std::vector<int> pos;
    const int last = extent - patch;
    for (int p = 0; p <= last; p += stride) pos.push_back(p);
    if (pos.back() != last) pos.push_back(last);
    return pos;
}

}  // namespace

std::vector<PatchPos> tile_references(int rows, int cols,
                                      const PatchGeometry& geom) {
    geom.validate(rows, cols);
    const auto ri = axis_positions(rows, geom.patch_size, geom.stride);
    const auto ci = axis_positions(cols, geom.patch_size, geom.stride);
    std::vector<PatchPos> refs;
    refs.reserve(ri.size() * ci.size());
    for (int r : ri)
        for (int c : ci) refs.push_back({r, c});
    return refs;
}

PatchGroupSet match_groups(const HsiCube& reduced,
                           const PatchGeometry& geom) {
    const int rows = reduced.rows();
    const int cols = reduced.cols();
    const int bands = reduced.bands();
    const int n = geom.patch_size;
    const int w = geom.search_radius;

    PatchGroupSet set;
    set.refs = tile_references(rows, cols, geom);
    set.groups.resize(set.refs.size());

    parallel_for(static_cast<std::int64_t>(set.refs.size()),
                 [&](std::int64_t j) {
        const PatchPos ref = set.refs[j];
        const int r0 = std::max(0, ref.row - w);
        const int r1 = std::min(rows - n, ref.row + w);
        const int c0 = std::max(0, ref.col - w);
        const int c1 = std::min(cols - n, ref.col + w);

        struct Cand {
            double dist;
            int order;  // raster index within the window, for tie-breaks
            PatchPos pos;
        };
        std::vector<Cand> cands;
        cands.reserve(static_cast<std::size_t>(r1 - r0 + 1) * (c1 - c0 + 1));
        int order = 0;
        for (int i = r0; i <= r1; ++i) {
            for (int c = c0; c <= c1; ++c) {
                double d = 0.0;
                for (int k = 0; k < bands; ++k)
                    for (int di = 0; di < n; ++di)
                        for (int dj = 0; dj < n; ++dj) {
                            const double diff =
                                reduced.at(i + di, c + dj, k) -
                                reduced.at(ref.row + di, ref.col + dj, k);
                            d += diff * diff;
                        }
                cands.push_back({d, order++, {i, c}});
            }
        }

        const std::size_t take =
            std::min<std::size_t>(geom.group_size, cands.size());
        std::partial_sort(cands.begin(), cands.begin() + take, cands.end(),
                          [](const Cand& a, const Cand& b) {
                              if (a.dist != b.dist) return a.dist < b.dist;
                              return a.order < b.order;
                          });

        std::vector<PatchPos> group;
        group.reserve(take);
        group.push_back(ref);
        for (std::size_t q = 0; q < take; ++q) {
            if (cands[q].pos == ref) continue;
            if (group.size() == take) break;
            group.push_back(cands[q].pos);
        }
        set.groups[j] = std::move(group);
    });

    return set;
}

Matrix gather_group(const HsiCube& reduced,
                    const std::vector<PatchPos>& group,
                    const PatchGeometry& geom) {
    const int n = geom.patch_size;
    const int bands = reduced.bands();
    Matrix out(static_cast<Eigen::Index>(n) * n * bands,
               static_cast<Eigen::Index>(group.size()));
    for (std::size_t q = 0; q < group.size(); ++q) {
        const PatchPos pos = group[q];
        if (pos.row < 0 || pos.col < 0 || pos.row + n > reduced.rows() ||
            pos.col + n > reduced.cols())
            throw std::out_of_range("gather_group: patch out of bounds");
        Eigen::Index e = 0;
        for (int di = 0; di < n; ++di)
            for (int dj = 0; dj < n; ++dj)
                for (int k = 0; k < bands; ++k)
                    out(e++, static_cast<Eigen::Index>(q)) =
                        reduced.at(pos.row + di, pos.col + dj, k);
    }
    return out;
}

HsiCube aggregate_groups(const std::vector<Matrix>& groups,
                         const PatchGroupSet& group_set,
                         const PatchGeometry& geom, int rows, int cols,
                         int bands, double value_scale) {
    if (groups.size() != group_set.groups.size())
        throw std::invalid_argument(
            "aggregate_groups: group count mismatch");
    const int n = geom.patch_size;
    HsiCube acc(rows, cols, bands, value_scale);
    std::vector<double> count(static_cast<std::size_t>(rows) * cols, 0.0);

    for (std::size_t j = 0; j < groups.size(); ++j) {
        const auto& positions = group_set.groups[j];
        const Matrix& m = groups[j];
        if (m.rows() != static_cast<Eigen::Index>(n) * n * bands ||
            m.cols() != static_cast<Eigen::Index>(positions.size()))
            throw std::invalid_argument(
                "aggregate_groups: group matrix shape mismatch");
        for (std::size_t q = 0; q < positions.size(); ++q) {
            const PatchPos pos = positions[q];
            Eigen::Index e = 0;
            for (int di = 0; di < n; ++di)
                for (int dj = 0; dj < n; ++dj) {
                    for (int k = 0; k < bands; ++k)
                        acc.at(pos.row + di, pos.col + dj, k) +=
                            m(e++, static_cast<Eigen::Index>(q));
                    count[static_cast<std::size_t>(pos.row + di) * cols +
                          pos.col + dj] += 1.0;
                }
        }
    }

    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double c = count[static_cast<std::size_t>(i) * cols + j];
            if (c <= 0.0)
                throw std::logic_error(
                    "aggregate_groups: uncovered pixel; reference tiling "
                    "must cover the image");
            for (int k = 0; k < bands; ++k) acc.at(i, j, k) /= c;
        }
    return acc;
}

}  // namespace ngmeet
