#ifndef CUNTZ_CUNTZ_HPP
#define CUNTZ_CUNTZ_HPP

#include "words.hpp"
#include "coefficient.hpp"
#include "algebra.hpp"
#include "algebra_io.hpp"
#include "word_perm.hpp"
#include "endocalc.hpp"
#include "rooted_trees.hpp"
#include "permdecide.hpp"
#include "census.hpp"

#endif  // CUNTZ_CUNTZ_HPP
