#pragma once

#include "isa/error.hpp"
#include "isa/flat_config.hpp"
#include "isa/utf8.hpp"
#include "isa/tokenize.hpp"
#include "isa/stemmer.hpp"
#include "isa/vocabulary.hpp"
#include "isa/patterns.hpp"
#include "isa/corpus.hpp"
#include "isa/categories.hpp"
#include "isa/simplex_lsq.hpp"
#include "isa/estimator.hpp"
#include "isa/bootstrap.hpp"
#include "isa/swbi.hpp"
#include "isa/swbi_export.hpp"
#include "isa/simlab.hpp"
#include "isa/commands.hpp"
