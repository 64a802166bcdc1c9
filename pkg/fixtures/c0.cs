{"kind":"cs","events":["a","b","c"],"configurations":[[],["a"],["b"],["c"],["a","b"],["a","c"],["b","c"]]}
