namespace flux::detail {
int placeholder_equivariant = 0;
}
