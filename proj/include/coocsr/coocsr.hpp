#pragma once

#include "coocsr/convert.hpp"
#include "coocsr/coo.hpp"
#include "coocsr/csr.hpp"
#include "coocsr/csr_document.hpp"
#include "coocsr/dense.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/fuzz.hpp"
#include "coocsr/mtx.hpp"
#include "coocsr/random.hpp"
#include "coocsr/relations.hpp"
#include "coocsr/scalars.hpp"
#include "coocsr/verdict.hpp"
