#pragma once

#include "parapost/kernels.hpp"

namespace parapost::kernels::detail {

const KernelTable* avx2_table_if_compiled();
const KernelTable* neon_table_if_compiled();

}  // namespace parapost::kernels::detail
