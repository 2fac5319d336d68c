#pragma once

#include "errors.hpp"
#include "integer.hpp"
#include "qz.hpp"
#include "residue.hpp"
#include "fields.hpp"
#include "scalar.hpp"
#include "exp_log.hpp"
#include "series.hpp"
#include "cyclotomic.hpp"
#include "laurent.hpp"
#include "linalg.hpp"
#include "lattice.hpp"
#include "characters.hpp"
#include "conic.hpp"
#include "torsion_coset.hpp"
#include "jumping.hpp"
