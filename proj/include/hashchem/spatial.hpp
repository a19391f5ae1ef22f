#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hashchem/core.hpp"

namespace hashchem {

/// Uniform bucket grid over the unit square for fixed-radius queries.
///
/// Entries refer to particles by slot (index into the particle vector the
/// index was built from). Each entry caches the particle position, so a
/// query touches only bucket memory. Cell side equals the query radius,
/// which bounds every query to the 3x3 block around the center's cell.
class GridIndex {
public:
    struct Entry {
        double x;
        double y;
        std::uint32_t slot;
    };

    /// Test hook for the verify command: deliberately skip the corner cells
    /// of every 3x3 query block.
    enum class Fault { none, skip_corner_cells };

    GridIndex() = default;
    explicit GridIndex(double radius);

    void clear();
    void insert(std::uint32_t slot, Vec2 pos);
    /// Removes `slot`, which must have been inserted at `pos`.
    void remove(std::uint32_t slot, Vec2 pos);

    /// Appends the slots of every entry with squared distance <= radius^2
    /// from `center`. `out` is not cleared.
    void query(Vec2 center, std::vector<std::uint32_t>& out) const;

    double cell_size() const noexcept { return cell_size_; }
    double radius() const noexcept { return radius_; }
    int cells_per_side() const noexcept { return cells_; }
    std::size_t size() const noexcept { return size_; }

    /// Cell coordinates (column, row) that `pos` belongs to.
    std::pair<int, int> cell_of(Vec2 pos) const noexcept;
    std::span<const Entry> bucket(int cx, int cy) const;

    /// Buckets inspected by the most recent query (instrumentation).
    int last_buckets_inspected() const noexcept { return last_inspected_; }

    void set_fault(Fault fault) noexcept { fault_ = fault; }

private:
    int clamp_cell(double coord) const noexcept;

    double radius_ = 0.0;
    double radius_sq_ = 0.0;
    double cell_size_ = 1.0;
    int cells_ = 1;
    std::vector<std::vector<Entry>> buckets_;
    std::size_t size_ = 0;
    Fault fault_ = Fault::none;
    mutable int last_inspected_ = 0;
};

/// Indexes every particle of `world` by its slot.
GridIndex build_index(const World& world);

/// Ids of the particles of `world` within Euclidean distance <= radius of
/// `center`, inclusive. Throws PreconditionError when `radius` differs from
/// the index's query radius.
std::vector<ParticleId> neighbors_within(const GridIndex& index, const World& world, Vec2 center,
                                         double radius);

} // namespace hashchem
