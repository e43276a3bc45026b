#pragma once

#include "cavityqed/atom_optics.hpp"
#include "cavityqed/cavity_ensemble.hpp"
#include "cavityqed/cavity_single_atom.hpp"
#include "cavityqed/constants.hpp"
#include "cavityqed/distribution_sampler.hpp"
#include "cavityqed/ensemble_free_space.hpp"
#include "cavityqed/errors.hpp"
#include "cavityqed/farfield_oracle.hpp"
#include "cavityqed/format.hpp"
#include "cavityqed/invariant_suite.hpp"
#include "cavityqed/spectra_analysis.hpp"
#include "cavityqed/spectrum_io.hpp"
#include "cavityqed/vec3.hpp"
