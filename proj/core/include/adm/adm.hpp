#pragma once

#include "adm/basis.hpp"
#include "adm/couplings.hpp"
#include "adm/dynamics.hpp"
#include "adm/errors.hpp"
#include "adm/hamiltonian.hpp"
#include "adm/observables.hpp"
#include "adm/sparse.hpp"
#include "adm/spectra.hpp"
#include "adm/validate.hpp"
