#pragma once

#include "modsl2/algebra_a.hpp"
#include "modsl2/classical_group.hpp"
#include "modsl2/error.hpp"
#include "modsl2/field.hpp"
#include "modsl2/linalg.hpp"
#include "modsl2/matrix.hpp"
#include "modsl2/orbits.hpp"
#include "modsl2/partition.hpp"
#include "modsl2/sl2_module.hpp"
#include "modsl2/triple_forge.hpp"
#include "modsl2/verifier.hpp"
