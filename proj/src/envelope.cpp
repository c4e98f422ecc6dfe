#include "hlsc/envelope.hpp"

namespace hlsc {

GridFunction lsc_envelope(const ModelSpec& m, const GridFunction& u) {
    GridFunction out = u;
    for (int x = 0; x < m.num_nodes(); ++x) {
        for (int y : m.grid.nodes[x].envelope_neighbors)
            if (u[y] < out[x]) out[x] = u[y];
    }
    return out;
}

bool is_grid_lsc(const ModelSpec& m, const GridFunction& u, double tol) {
    for (int x = 0; x < m.num_nodes(); ++x) {
        for (int y : m.grid.nodes[x].envelope_neighbors)
            if (u[x] > u[y] + tol) return false;
    }
    return true;
}

}  // namespace hlsc
