#include "hashchem/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "hashchem/error.hpp"

namespace hashchem {

namespace {

// Bounds memory for very small radii; a larger cell is still correct.
constexpr int kMaxCellsPerSide = 2048;

} // namespace

GridIndex::GridIndex(double radius) : radius_(radius), radius_sq_(radius * radius) {
    if (!(radius > 0.0)) {
        throw PreconditionError("GridIndex: radius must be > 0");
    }
    cell_size_ = std::max(radius, 1.0 / kMaxCellsPerSide);
    cells_ = std::max(1, static_cast<int>(std::ceil(1.0 / cell_size_)));
    cells_ = std::min(cells_, kMaxCellsPerSide);
    buckets_.resize(static_cast<std::size_t>(cells_) * static_cast<std::size_t>(cells_));
}

void GridIndex::clear() {
    for (auto& b : buckets_) {
        b.clear();
    }
    size_ = 0;
}

int GridIndex::clamp_cell(double coord) const noexcept {
    const double c = std::floor(coord / cell_size_);
    if (!(c >= 0.0)) return 0;
    if (c >= cells_ - 1) return cells_ - 1;
    return static_cast<int>(c);
}

std::pair<int, int> GridIndex::cell_of(Vec2 pos) const noexcept {
    return {clamp_cell(pos.x), clamp_cell(pos.y)};
}

std::span<const GridIndex::Entry> GridIndex::bucket(int cx, int cy) const {
    if (cx < 0 || cy < 0 || cx >= cells_ || cy >= cells_) {
        throw PreconditionError("GridIndex::bucket: cell out of range");
    }
    return buckets_[static_cast<std::size_t>(cy) * cells_ + cx];
}

void GridIndex::insert(std::uint32_t slot, Vec2 pos) {
    const auto [cx, cy] = cell_of(pos);
    buckets_[static_cast<std::size_t>(cy) * cells_ + cx].push_back({pos.x, pos.y, slot});
    ++size_;
}

void GridIndex::remove(std::uint32_t slot, Vec2 pos) {
    const auto [cx, cy] = cell_of(pos);
    auto& b = buckets_[static_cast<std::size_t>(cy) * cells_ + cx];
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].slot == slot) {
            b[i] = b.back();
            b.pop_back();
            --size_;
            return;
        }
    }
    throw PreconditionError("GridIndex::remove: slot not present in its cell");
}

void GridIndex::query(Vec2 center, std::vector<std::uint32_t>& out) const {
    const auto [cx, cy] = cell_of(center);
    const int x0 = std::max(cx - 1, 0);
    const int x1 = std::min(cx + 1, cells_ - 1);
    const int y0 = std::max(cy - 1, 0);
    const int y1 = std::min(cy + 1, cells_ - 1);
    int inspected = 0;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (fault_ == Fault::skip_corner_cells && x != cx && y != cy) {
                continue;
            }
            ++inspected;
            for (const Entry& e : buckets_[static_cast<std::size_t>(y) * cells_ + x]) {
                const double dx = e.x - center.x;
                const double dy = e.y - center.y;
                if (dx * dx + dy * dy <= radius_sq_) {
                    out.push_back(e.slot);
                }
            }
        }
    }
    last_inspected_ = inspected;
}

GridIndex build_index(const World& world) {
    GridIndex index(world.params.radius);
    for (std::size_t i = 0; i < world.particles.size(); ++i) {
        index.insert(static_cast<std::uint32_t>(i), world.particles[i].pos);
    }
    return index;
}

std::vector<ParticleId> neighbors_within(const GridIndex& index, const World& world, Vec2 center,
                                         double radius) {
    if (radius != index.radius()) {
        throw PreconditionError("neighbors_within: radius must equal the index radius");
    }
    std::vector<std::uint32_t> slots;
    index.query(center, slots);
    std::vector<ParticleId> ids;
    ids.reserve(slots.size());
    for (auto s : slots) {
        ids.push_back(world.particles.at(s).id);
    }
    return ids;
}

} // namespace hashchem
