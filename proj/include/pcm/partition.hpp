#pragma once

#include "pcm/model.hpp"
#include "pcm/price_plane.hpp"

#include <string>
#include <vector>

namespace pcm {

/// Which side of the diagonal R_LS = R_WP a sub-space lies on. The
/// diagonal itself belongs to ls_ge_wp.
enum class PriceOrder { ls_ge_wp, ls_lt_wp };

const char* to_string(PriceOrder order);

/// The line n R_WP + (N - n) R_LS = rhs separating the sign of the
/// n-WP equilibrium total.
struct BoundaryLine {
    int n = 0;
    double rhs = 0.0;
};

/// A half-plane in (R_WP, R_LS). Either a boundary half-plane
///   at_most:  n R_WP + (N - n) R_LS <= rhs   (total >= 0, up-regulation)
///   above:    n R_WP + (N - n) R_LS >  rhs   (total <  0, down-regulation)
/// or the diagonal half-plane of a price order.
struct HalfPlane {
    enum class Kind { at_most, above, diagonal_ge, diagonal_lt };

    Kind kind = Kind::at_most;
    int n = 0;  // boundary index, unused for diagonal kinds
    double rhs = 0.0;

    bool strict() const { return kind == Kind::above || kind == Kind::diagonal_lt; }
    /// Exact membership test.
    bool contains(int size, IncentivePair p) const;
    /// Coefficients (cw, cl, r) of the equivalent cw R_WP + cl R_LS >= r
    /// (or > r when strict).
    Affine2 as_lower_bound(int size) const;
    std::string describe(int size) const;
};

/// One cell of the (R_WP, R_LS) plane on which the balancing side of
/// every n-WP scenario is fixed.
struct SubSpace {
    int id = 0;
    PriceOrder order = PriceOrder::ls_ge_wp;
    int n_sigma = -1;  // inversion point in {-1, 0, ..., N}
    std::vector<HalfPlane> half_planes;
    std::vector<BalancingSide> cb_table;  // indexed by n = 0..N

    bool contains(IncentivePair p) const;
    std::string name() const;
};

/// cb_table of a cell, straight from the determination table.
std::vector<BalancingSide> balancing_table(PriceOrder order, int n_sigma, int size);

struct Partition {
    int size = 0;
    double rhs = 0.0;
    std::vector<SubSpace> cells;  // ls_ge_wp cells for n_sigma = -1..N, then ls_lt_wp
};

/// The 2N + 4 sub-spaces of one hour.
Partition build_partition(const HourData& h);

/// Lines n = 0..N, for reporting.
std::vector<BoundaryLine> boundary_lines(const Partition& partition);

/// The unique cell containing point.
const SubSpace& classify(const Partition& partition, IncentivePair point);

/// Plain-text dump of the boundary lines and every cell's C_B table.
std::string dump(const Partition& partition);

}  // namespace pcm
