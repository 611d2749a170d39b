#pragma once

#include "mdyn/aggregate.hpp"
#include "mdyn/book.hpp"
#include "mdyn/clearing.hpp"
#include "mdyn/errors.hpp"
#include "mdyn/ideal.hpp"
#include "mdyn/io.hpp"
#include "mdyn/isoutil.hpp"
#include "mdyn/measures.hpp"
#include "mdyn/qty.hpp"
#include "mdyn/stepfn.hpp"
#include "mdyn/utility.hpp"
