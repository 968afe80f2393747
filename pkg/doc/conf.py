# pinwheel-forge documentation build configuration file
import pkg_resources

extensions = [
    "sphinx.ext.doctest",
    "sphinx.ext.autodoc",
]

autoclass_content = "both"
autodoc_member_order = "groupwise"

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "pinwheel-forge"
copyright = "2026, pinwheel-forge developers"
author = "pinwheel-forge developers"

version = pkg_resources.get_distribution("pinwheel-forge").version
release = version

language = None
exclude_patterns = ["_build"]
pygments_style = "sphinx"
todo_include_todos = False

html_theme = "default"
html_static_path = []
htmlhelp_basename = "pinwheelforgedoc"

latex_documents = [
    (
        master_doc,
        "pinwheel-forge.tex",
        "pinwheel-forge Documentation",
        author,
        "manual",
    ),
]

man_pages = [(master_doc, "pwforge", "pinwheel-forge Documentation", [author], 1)]
