from .svg import BiplotSpec, biplot_spec, render_biplot
from .tables_csv import (
    builtin_dataset,
    load_csv,
    parse_csv,
    write_csv_table,
    write_outputs,
)
