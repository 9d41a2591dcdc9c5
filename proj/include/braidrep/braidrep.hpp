#ifndef BRAIDREP_BRAIDREP_HPP
#define BRAIDREP_BRAIDREP_HPP

#include "error.hpp"
#include "permutation.hpp"
#include "block_algebra.hpp"
#include "braid_rep.hpp"
#include "analysis.hpp"
#include "conjugacy.hpp"
#include "coset_action.hpp"
#include "search.hpp"

#endif
