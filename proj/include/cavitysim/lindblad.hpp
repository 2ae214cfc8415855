#pragma once

#include <vector>

#include "cavitysim/drives.hpp"
#include "cavitysim/operators.hpp"
#include "cavitysim/system_params.hpp"

namespace cavitysim {

/// Static Hamiltonian in the frame co-rotating with every bare mode
/// frequency: self-Kerr terms -(K/2) x^dag^2 x^2 per mode plus the cross
/// terms -chi n_c n_q - chi_qr n_r n_q - chi_cr n_r n_c. Subsystems absent
/// from the space are skipped; the readout resonator is optional.
Operator build_static_hamiltonian(const SystemParams& params, const SpacePtr& space);

struct CollapseChannel {
    Operator op;
    double rate = 0.0; // rad/s, multiplies D[op]
};

/// Damping, heating and dephasing channels from the coherence parameters:
/// cavity lowering (1+nth_c)/t1_c and raising nth_c/t1_c, transmon ladder
/// lowering (1+nth_q)/t1_q and raising nth_q/t1_q, transmon dephasing n_q at
/// 2 (1/t2_q - 1/(2 t1_q)), readout lowering 1/t1_r when present.
std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const SpacePtr& space);

/// Channel set for sideband encode/decode pulses: identical ladder channels
/// but with the transmon dephasing rate taken from the g-f superposition
/// coherence time, which is the manifold the pulse exercises.
std::vector<CollapseChannel> sideband_collapse_channels(const SystemParams& params,
                                                        const SpacePtr& space);

/// Column-stacked superoperator of d rho/dt = -i[H,rho] + sum_k rate D[L_k].
SparseCxd build_liouvillian(const Operator& hamiltonian,
                            const std::vector<CollapseChannel>& channels);

} // namespace cavitysim
