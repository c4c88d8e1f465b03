#ifndef HB_CHECKPOINT_HPP
#define HB_CHECKPOINT_HPP

#include <string>

#include "hb/mlp.hpp"

namespace hb {

/// The four networks of one agent, in fixed file order.
struct Checkpoint {
  Mlpd actor;
  Mlpd critic;
  Mlpd target_actor;
  Mlpd target_critic;
};

/// `HB-CKPT v1` text format: per net a header line
/// `net <name> <layer sizes> <tanh|linear>`, then every weight (layer by
/// layer, row-major), then every bias, one %.17g value per line.
/// save -> load -> save is byte-identical.
void saveCheckpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint loadCheckpoint(const std::string& path);

}  // namespace hb

#endif  // HB_CHECKPOINT_HPP
