#pragma once

#include <boundperm/closed_form.hpp>
#include <boundperm/count.hpp>
#include <boundperm/count_table.hpp>
#include <boundperm/enumerate.hpp>
#include <boundperm/errors.hpp>
#include <boundperm/frontier_dp.hpp>
#include <boundperm/oeis.hpp>
#include <boundperm/permutation.hpp>
#include <boundperm/polynomial.hpp>
#include <boundperm/seqmine.hpp>
#include <boundperm/structure.hpp>
