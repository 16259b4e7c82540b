#pragma once

#include "kca/ca.hpp"
#include "kca/corpus.hpp"
#include "kca/eval.hpp"
#include "kca/gini.hpp"
#include "kca/kernel_ca.hpp"
#include "kca/linalg.hpp"
#include "kca/tables.hpp"
