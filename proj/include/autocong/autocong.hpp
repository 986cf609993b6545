#pragma once

#include "autocong/analysis/attainment.hpp"
#include "autocong/analysis/frequencies.hpp"
#include "autocong/analysis/language.hpp"
#include "autocong/analysis/period.hpp"
#include "autocong/christol/christol.hpp"
#include "autocong/christol/fp_poly.hpp"
#include "autocong/corpus/build.hpp"
#include "autocong/corpus/document.hpp"
#include "autocong/corpus/fixture.hpp"
#include "autocong/corpus/oracle.hpp"
#include "autocong/dfao.hpp"
#include "autocong/engine/build.hpp"
#include "autocong/engine/problem.hpp"
#include "autocong/error.hpp"
#include "autocong/int_poly.hpp"
#include "autocong/lucas/lucas.hpp"
#include "autocong/mod_poly.hpp"
#include "autocong/modulus.hpp"
#include "autocong/partition.hpp"
#include "autocong/series.hpp"
